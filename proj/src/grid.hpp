// Uniform bucket grid for radius and nearest-neighbour queries on Points.
#pragma once

#include "rdel/kernel.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rdel {

class PointGrid {
public:
        PointGrid() = default;
        PointGrid(const std::vector<Point>& pts, double cell);

        void insert(int idx, const Point& p);
        int dim() const { return dim_; }
        double cell() const { return cell_; }

        // Calls f(index, squared distance) for every stored point with |p - x| <= r.
        template <class F>
        void radius(const Point& x, double r, F&& f) const
        {
                if (!dim_)
                        return;
                const double r2 = r * r;
                int lo[kMaxDim], hi[kMaxDim];
                double cells = 1.0;
                for (int i = 0; i < dim_; ++i) {
                        lo[i] = coord(x[i] - r, i);
                        hi[i] = coord(x[i] + r, i);
                        cells *= hi[i] - lo[i] + 1;
                }
                auto scan = [&](int, const std::vector<int>& bucket) {
                        for (int j : bucket) {
                                double d2 = dist2(pts_[j], x);
                                if (d2 <= r2)
                                        f(j, d2);
                        }
                };
                if (cells > 4.0 * lists_.size()) {
                        for (std::size_t b = 0; b < lists_.size(); ++b)
                                scan(static_cast<int>(b), lists_[b]);
                        return;
                }
                visit_box(lo, hi, scan);
        }

        // Calls f(bucket id, members) for every bucket that may hold points within r of x.
        template <class F>
        void radius_buckets(const Point& x, double r, F&& f) const
        {
                if (!dim_)
                        return;
                int lo[kMaxDim], hi[kMaxDim];
                double cells = 1.0;
                for (int i = 0; i < dim_; ++i) {
                        lo[i] = coord(x[i] - r, i);
                        hi[i] = coord(x[i] + r, i);
                        cells *= hi[i] - lo[i] + 1;
                }
                if (cells > 4.0 * lists_.size()) {
                        for (std::size_t b = 0; b < lists_.size(); ++b)
                                f(static_cast<int>(b), lists_[b]);
                        return;
                }
                visit_box(lo, hi, f);
        }

        const std::vector<std::vector<int>>& buckets() const { return lists_; }
        const Point& point(int i) const { return pts_[i]; }

        // The k nearest stored points (all points at the k-th distance are included
        // when include_ties is set). Sorted by (squared distance, index).
        std::vector<std::pair<double, int>> nearest(const Point& x, int k, bool include_ties = false) const;

        std::size_t size() const { return count_; }

private:
        int dim_ = 0;
        double cell_ = 1.0;
        Point origin_;
        std::size_t count_ = 0;
        std::vector<Point> pts_; // indexed by the caller's index
        std::unordered_map<std::uint64_t, int> buckets_;
        std::vector<std::vector<int>> lists_;

        int coord(double v, int axis) const;
        std::uint64_t key(const int* c) const;

        template <class F>
        void visit_box(const int* lo, const int* hi, F&& f) const
        {
                int c[kMaxDim];
                for (int i = 0; i < dim_; ++i)
                        c[i] = lo[i];
                while (true) {
                        auto it = buckets_.find(key(c));
                        if (it != buckets_.end())
                                f(it->second, lists_[it->second]);
                        int i = 0;
                        for (; i < dim_; ++i) {
                                if (++c[i] <= hi[i])
                                        break;
                                c[i] = lo[i];
                        }
                        if (i == dim_)
                                return;
                }
        }
};

} // namespace rdel
