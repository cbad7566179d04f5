#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rdel {
namespace {
constexpr int kBits = 12;
constexpr int kSpan = 1 << kBits;
} // namespace

PointGrid::PointGrid(const std::vector<Point>& pts, double cell)
{
        if (!(cell > 0.0))
                throw GeometryError("PointGrid: cell size must be positive");
        cell_ = cell;
        if (pts.empty())
                return;
        dim_ = pts[0].dim();
        origin_ = Point(dim_);
        // centre the key range on the data
        Point lo = pts[0], hi = pts[0];
        for (const Point& p : pts)
                for (int i = 0; i < dim_; ++i) {
                        lo[i] = std::min(lo[i], p[i]);
                        hi[i] = std::max(hi[i], p[i]);
                }
        for (int i = 0; i < dim_; ++i) {
                cell_ = std::max(cell_, (hi[i] - lo[i]) / (kSpan - 16));
                origin_[i] = 0.5 * (lo[i] + hi[i]);
        }
        for (std::size_t i = 0; i < pts.size(); ++i)
                insert(static_cast<int>(i), pts[i]);
}

int PointGrid::coord(double v, int axis) const
{
        double c = std::floor((v - origin_[axis]) / cell_) + kSpan / 2;
        return static_cast<int>(std::clamp(c, 0.0, double(kSpan - 1)));
}

std::uint64_t PointGrid::key(const int* c) const
{
        std::uint64_t k = 0;
        for (int i = 0; i < dim_; ++i)
                k = (k << kBits) | static_cast<std::uint64_t>(c[i]);
        return k;
}

void PointGrid::insert(int idx, const Point& p)
{
        if (!dim_) {
                dim_ = p.dim();
                origin_ = p;
        }
        if (idx >= static_cast<int>(pts_.size()))
                pts_.resize(idx + 1);
        pts_[idx] = p;
        int c[kMaxDim];
        for (int i = 0; i < dim_; ++i)
                c[i] = coord(p[i], i);
        auto [it, fresh] = buckets_.try_emplace(key(c), static_cast<int>(lists_.size()));
        if (fresh)
                lists_.emplace_back();
        lists_[it->second].push_back(idx);
        ++count_;
}

std::vector<std::pair<double, int>> PointGrid::nearest(const Point& x, int k, bool include_ties) const
{
        std::vector<std::pair<double, int>> best;
        if (!dim_ || k <= 0)
                return best;
        int c[kMaxDim];
        for (int i = 0; i < dim_; ++i)
                c[i] = coord(x[i], i);
        std::size_t seen = 0;
        auto kth = [&]() {
                return static_cast<int>(best.size()) >= k ? best[k - 1].first
                                                          : std::numeric_limits<double>::infinity();
        };
        for (int R = 0; R < kSpan; ++R) {
                if (std::pow(2.0 * R + 1.0, dim_) > 2.0 * lists_.size()) {
                        // ring enumeration would cost more than a full scan
                        best.clear();
                        for (const auto& list : lists_)
                                for (int j : list)
                                        best.push_back({dist2(pts_[j], x), j});
                        std::sort(best.begin(), best.end());
                        std::size_t n = std::min<std::size_t>(k, best.size());
                        if (include_ties)
                                while (n < best.size() && best[n].first == best[n - 1].first)
                                        ++n;
                        best.resize(n);
                        return best;
                }
                int lo[kMaxDim], hi[kMaxDim];
                for (int i = 0; i < dim_; ++i) {
                        lo[i] = std::max(0, c[i] - R);
                        hi[i] = std::min(kSpan - 1, c[i] + R);
                }
                int cur[kMaxDim];
                for (int i = 0; i < dim_; ++i)
                        cur[i] = lo[i];
                bool any_cell = false;
                while (true) {
                        int cheb = 0;
                        for (int i = 0; i < dim_; ++i)
                                cheb = std::max(cheb, std::abs(cur[i] - c[i]));
                        if (cheb == R) {
                                any_cell = true;
                                auto it = buckets_.find(key(cur));
                                if (it != buckets_.end())
                                        for (int j : lists_[it->second]) {
                                                ++seen;
                                                best.push_back({dist2(pts_[j], x), j});
                                        }
                        }
                        int i = 0;
                        for (; i < dim_; ++i) {
                                if (++cur[i] <= hi[i])
                                        break;
                                cur[i] = lo[i];
                        }
                        if (i == dim_)
                                break;
                }
                std::sort(best.begin(), best.end());
                if (static_cast<int>(best.size()) > k) {
                        std::size_t n = k;
                        if (include_ties)
                                while (n < best.size() && best[n].first == best[k - 1].first)
                                        ++n;
                        best.resize(n);
                }
                const double reach = R * cell_;
                if (seen == count_ || !any_cell || kth() < reach * reach)
                        break;
        }
        return best;
}

} // namespace rdel
