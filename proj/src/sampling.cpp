#include "rdel/sampling.hpp"

#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>

namespace rdel {

std::uint64_t checksum(const std::vector<Point>& pts)
{
        // FNV-1a over the raw coordinate bits
        std::uint64_t h = 1469598103934665603ull;
        for (const Point& p : pts)
                for (int i = 0; i < p.dim(); ++i) {
                        std::uint64_t bits;
                        double v = p[i];
                        std::memcpy(&bits, &v, sizeof bits);
                        for (int b = 0; b < 8; ++b) {
                                h ^= (bits >> (8 * b)) & 0xffu;
                                h *= 1099511628211ull;
                        }
                }
        return h;
}

namespace {

constexpr double kJitter = 0.1; // fraction of the grid step

// Cell centres of the boundary of [c - R, c + R]^d, each jittered by at most kJitter * step.
// Covering radius of the boundary: (0.5 + kJitter) * step * sqrt(d - 1).
std::vector<Point> box_boundary_grid(const Point& c, double R, double target_cover, std::uint64_t seed,
                                     double& cover)
{
        const int d = c.dim();
        const double step0 = target_cover / ((0.5 + kJitter) * std::sqrt(double(std::max(1, d - 1))));
        const long n = std::max<long>(1, static_cast<long>(std::ceil(2.0 * R / step0)));
        const double step = 2.0 * R / n;
        cover = (0.5 + kJitter) * step * std::sqrt(double(std::max(1, d - 1)));
        double total = 2.0 * d * std::pow(double(n), d - 1);
        if (total > double(kMaxCloudPoints))
                throw GeometryError("background_cloud: spacing too small for the memory budget (" +
                                    std::to_string(static_cast<long long>(total)) + " points)");
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> jit(-kJitter * step, kJitter * step);
        std::vector<Point> out;
        out.reserve(static_cast<std::size_t>(total));
        std::vector<long> k(d, 0);
        for (int axis = 0; axis < d; ++axis)
                for (int side = 0; side < 2; ++side) {
                        std::fill(k.begin(), k.end(), 0);
                        while (true) {
                                Point p(d);
                                int slot = 0;
                                for (int i = 0; i < d; ++i) {
                                        if (i == axis) {
                                                p[i] = c[i] + (side ? R : -R);
                                                continue;
                                        }
                                        p[i] = c[i] - R + step * (k[slot] + 0.5) + jit(rng);
                                        ++slot;
                                }
                                out.push_back(p);
                                int i = 0;
                                for (; i < d - 1; ++i) {
                                        if (++k[i] < n)
                                                break;
                                        k[i] = 0;
                                }
                                if (i == d - 1)
                                        break;
                        }
                }
        return out;
}

} // namespace

Cloud background_cloud(const ImplicitManifold& m, double spacing, std::uint64_t seed)
{
        if (!(spacing > 0.0))
                throw GeometryError("background_cloud: spacing must be positive");
        Cloud cloud;
        cloud.spacing = spacing;
        cloud.seed = seed;
        const BaseShape& b = m.base();
        std::vector<Point> raw;
        switch (b.kind) {
        case BaseKind::Hypercube: {
                // closest-point map onto the convex thickened cube is 1-Lipschitz and onto M
                double cover;
                raw = box_boundary_grid(Point(b.d), b.delta, spacing, seed, cover);
                cloud.covering_bound = cover;
                break;
        }
        case BaseKind::Sphere: {
                // radial map from a box of half-width 2r contracts by at least 1/2
                double cover;
                raw = box_boundary_grid(b.center, 2.0 * b.radius, 2.0 * spacing, seed, cover);
                cloud.covering_bound = 0.5 * cover;
                break;
        }
        case BaseKind::Torus: {
                const double arc_major = (b.major + b.minor);
                const long nt = static_cast<long>(std::ceil(2 * M_PI * arc_major / (spacing * std::sqrt(2.0))));
                const long np = static_cast<long>(std::ceil(2 * M_PI * b.minor / (spacing * std::sqrt(2.0))));
                if (double(nt) * np > double(kMaxCloudPoints))
                        throw GeometryError("background_cloud: spacing too small for the memory budget");
                // jittered parameter grid; exact lattice symmetry makes cospherical slivers
                std::mt19937_64 rng(seed);
                std::uniform_real_distribution<double> jit(-kJitter, kJitter);
                for (long i = 0; i < nt; ++i)
                        for (long j = 0; j < np; ++j) {
                                double t = 2 * M_PI * (i + 0.5 + jit(rng)) / nt, ph = 2 * M_PI * (j + 0.5 + jit(rng)) / np;
                                double rr = b.major + b.minor * std::cos(ph);
                                raw.push_back(Point{rr * std::cos(t), rr * std::sin(t), b.minor * std::sin(ph)});
                        }
                cloud.covering_bound = (0.5 + kJitter) * std::hypot(2 * M_PI * arc_major / nt, 2 * M_PI * b.minor / np);
                break;
        }
        }
        cloud.points.reserve(raw.size());
        for (const Point& x : raw) {
                Point y = m.bumps().empty() ? m.base_project(x) : m.project(m.base_project(x));
                if (std::fabs(m.field(y)) > tol.on_surface)
                        throw GeometryError("background_cloud: projection left the surface at " + to_string(x));
                cloud.points.push_back(y);
        }
        cloud.checksum = checksum(cloud.points);
        return cloud;
}

int LandmarkSet::index_of(const std::string& name) const
{
        auto it = named.find(name);
        if (it == named.end())
                throw GeometryError("landmark set: no landmark named '" + name + "'");
        return it->second;
}

double min_pairwise_distance(const std::vector<Point>& pts)
{
        if (pts.size() < 2)
                return std::numeric_limits<double>::infinity();
        const int d = pts[0].dim();
        Point lo = pts[0], hi = pts[0];
        for (const Point& p : pts)
                for (int i = 0; i < d; ++i) {
                        lo[i] = std::min(lo[i], p[i]);
                        hi[i] = std::max(hi[i], p[i]);
                }
        double side = 0.0;
        for (int i = 0; i < d; ++i)
                side = std::max(side, hi[i] - lo[i]);
        double cell = side / std::max(1.0, std::pow(double(pts.size()), 1.0 / std::max(1, d - 1)));
        if (!(cell > 0.0))
                return 0.0;
        PointGrid g(pts, cell);
        double best = std::numeric_limits<double>::infinity();
        for (const Point& p : pts) {
                auto nn = g.nearest(p, 2);
                if (nn.size() == 2)
                        best = std::min(best, nn[1].first);
        }
        return std::sqrt(best);
}

double covering_radius(const std::vector<Point>& set, const Cloud& cloud, double hint, int* farthest)
{
        if (farthest)
                *farthest = -1;
        if (set.empty() || cloud.points.empty())
                return set.empty() ? std::numeric_limits<double>::infinity() : 0.0;
        // scatter balls of radius hint over the cloud; stragglers fall back to a nearest query
        const double r0 = hint > 0.0 ? hint : 1.0;
        std::vector<double> d2(cloud.points.size(), std::numeric_limits<double>::infinity());
        PointGrid cg(cloud.points, r0);
        for (const Point& p : set)
                cg.radius(p, r0, [&](int i, double dd) { d2[i] = std::min(d2[i], dd); });
        PointGrid sg(set, r0);
        double worst = -1.0;
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
                if (std::isinf(d2[i]))
                        d2[i] = sg.nearest(cloud.points[i], 1)[0].first;
                if (d2[i] > worst) {
                        worst = d2[i];
                        if (farthest)
                                *farthest = static_cast<int>(i);
                }
        }
        return std::sqrt(worst);
}

void measure(LandmarkSet& L, const Cloud& cloud)
{
        L.sparsity = min_pairwise_distance(L.points);
        const double hint = L.epsilon > 0.0 ? 2.0 * L.epsilon + 2.0 * cloud.covering_bound : 0.0;
        L.density = L.points.empty() ? 0.0 : covering_radius(L.points, cloud, hint, &L.farthest_cloud_index);
}

LandmarkSet farthest_point_sample(const ImplicitManifold& m, const std::vector<Point>& seeds, double epsilon,
                                  const Cloud& cloud)
{
        if (!(epsilon > 0.0))
                throw GeometryError("farthest_point_sample: epsilon must be positive");
        for (const Point& s : seeds)
                if (std::fabs(m.field(s)) > tol.on_surface)
                        throw GeometryError("farthest_point_sample: seed off the surface: " + to_string(s));
        for (std::size_t i = 0; i < seeds.size(); ++i)
                for (std::size_t j = i + 1; j < seeds.size(); ++j)
                        if (dist(seeds[i], seeds[j]) < epsilon * (1.0 - 1e-9))
                                throw GeometryError("farthest_point_sample: seeds closer than epsilon");
        if (cloud.points.empty())
                throw GeometryError("farthest_point_sample: empty cloud");

        LandmarkSet L;
        L.epsilon = epsilon;
        L.seeds = seeds;
        L.cloud_checksum = cloud.checksum;
        L.points = seeds;

        const std::size_t n = cloud.points.size();
        std::vector<double> d2(n, std::numeric_limits<double>::infinity());
        PointGrid grid(cloud.points, 2.0 * epsilon);
        const auto& buckets = grid.buckets();
        // per-bucket farthest member (largest distance, then lowest index)
        std::vector<double> bmax(buckets.size(), std::numeric_limits<double>::infinity());
        std::vector<int> barg(buckets.size(), -1);
        auto refresh = [&](int b) {
                double best = -1.0;
                int arg = -1;
                for (int i : buckets[b])
                        if (d2[i] > best || (d2[i] == best && i < arg)) {
                                best = d2[i];
                                arg = i;
                        }
                bmax[b] = best;
                barg[b] = arg;
        };
        auto farthest = [&]() {
                double best = -1.0;
                int arg = -1;
                for (std::size_t b = 0; b < buckets.size(); ++b)
                        if (bmax[b] > best || (bmax[b] == best && barg[b] < arg)) {
                                best = bmax[b];
                                arg = barg[b];
                        }
                return std::pair<double, int>{best, arg};
        };
        bool first = true;
        auto relax = [&](const Point& p) {
                const double r = first ? std::numeric_limits<double>::infinity() : std::sqrt(farthest().first);
                first = false;
                auto visit = [&](int b, const std::vector<int>& members) {
                        bool changed = false;
                        for (int i : members) {
                                double dd = dist2(cloud.points[i], p);
                                if (dd < d2[i]) {
                                        d2[i] = dd;
                                        changed = true;
                                }
                        }
                        if (changed)
                                refresh(b);
                };
                if (std::isinf(r))
                        for (std::size_t b = 0; b < buckets.size(); ++b)
                                visit(static_cast<int>(b), buckets[b]);
                else
                        grid.radius_buckets(p, r, visit);
        };
        for (const Point& s : seeds)
                relax(s);
        if (seeds.empty()) {
                L.points.push_back(cloud.points[0]);
                relax(cloud.points[0]);
        }
        const double stop2 = 4.0 * epsilon * epsilon;
        while (true) {
                auto [far2, idx] = farthest();
                if (far2 <= stop2)
                        break;
                L.points.push_back(cloud.points[idx]);
                relax(cloud.points[idx]);
        }
        measure(L, cloud);
        return L;
}

namespace {

void finish(LandmarkSet& L, const Cloud* cloud)
{
        if (cloud)
                measure(L, *cloud);
        else
                L.sparsity = min_pairwise_distance(L.points);
}

} // namespace

LandmarkSet excise_ball(const LandmarkSet& L, const Ball& b, const std::vector<int>& protect, const Cloud* cloud)
{
        const double r2 = b.radius * b.radius;
        for (int p : protect)
                if (dist(L.points.at(p), b.center) < b.radius - tol.residual * std::max(1.0, b.radius))
                        throw GeometryError("excise_ball: protected landmark " + std::to_string(p) +
                                            " lies strictly inside the ball");
        LandmarkSet out = L;
        out.points.clear();
        std::vector<int> remap(L.points.size(), -1);
        int removed = 0;
        for (std::size_t i = 0; i < L.points.size(); ++i) {
                bool prot = std::find(protect.begin(), protect.end(), static_cast<int>(i)) != protect.end();
                if (!prot && dist2(L.points[i], b.center) < r2 * (1.0 - 1e-12)) {
                        ++removed;
                        continue;
                }
                remap[i] = static_cast<int>(out.points.size());
                out.points.push_back(L.points[i]);
        }
        out.named.clear();
        for (const auto& [name, idx] : L.named)
                if (remap[idx] >= 0)
                        out.named[name] = remap[idx];
        out.history.push_back("excise ball center " + to_string(b.center) + " radius " + std::to_string(b.radius) +
                              ": removed " + std::to_string(removed));
        if (removed)
                finish(out, cloud);
        return out;
}

LandmarkSet substitute(const LandmarkSet& L, int idx, const Point& p, const ImplicitManifold& m,
                       const std::string& new_name, const Cloud* cloud)
{
        if (std::fabs(m.field(p)) > tol.on_surface)
                throw GeometryError("substitute: point off the surface: " + to_string(p));
        LandmarkSet out = L;
        out.points.at(idx) = p;
        if (!new_name.empty()) {
                for (auto it = out.named.begin(); it != out.named.end();)
                        it = it->second == idx ? out.named.erase(it) : std::next(it);
                out.named[new_name] = idx;
        }
        out.history.push_back("substitute landmark " + std::to_string(idx) + " by " + to_string(p));
        finish(out, cloud);
        return out;
}

LandmarkSet insert_landmark(const LandmarkSet& L, const Point& p, const ImplicitManifold& m, const std::string& name,
                            const Cloud* cloud)
{
        if (std::fabs(m.field(p)) > tol.on_surface)
                throw GeometryError("insert_landmark: point off the surface: " + to_string(p));
        LandmarkSet out = L;
        out.points.push_back(p);
        if (!name.empty())
                out.named[name] = static_cast<int>(out.points.size()) - 1;
        out.history.push_back("insert " + to_string(p));
        finish(out, cloud);
        return out;
}

} // namespace rdel
