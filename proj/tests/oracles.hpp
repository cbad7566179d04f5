// Brute-force references used by the unit tests and the acceptance runner.
#pragma once

#include "rdel/complex.hpp"
#include "rdel/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using rdel::Point;
using rdel::Simplex;

// Nerve of the Voronoi cells restricted to the unit circle centred at the origin.
// Edges come from bisector/circle crossings where the two cells tie for nearest; vertices from
// midpoints of the arcs cut out by all crossings. Triple points are non-generic and ignored.
inline std::set<Simplex> circle_nerve(const std::vector<Point>& P, double gap = 1e-11)
{
        const int n = static_cast<int>(P.size());
        auto d2 = [&](double th, int i) {
                const double x = std::cos(th) - P[i][0], y = std::sin(th) - P[i][1];
                return x * x + y * y;
        };
        std::set<Simplex> out;
        std::vector<double> cuts;
        for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                        const double a = 2 * (P[j][0] - P[i][0]), b = 2 * (P[j][1] - P[i][1]);
                        const double c = rdel::norm2(P[j]) - rdel::norm2(P[i]);
                        const double r = std::hypot(a, b);
                        if (r == 0 || std::fabs(c) > r)
                                continue;
                        const double base = std::atan2(b, a), off = std::acos(c / r);
                        for (double th : {base + off, base - off}) {
                                cuts.push_back(th);
                                const double di = d2(th, i);
                                double other = std::numeric_limits<double>::infinity();
                                for (int k = 0; k < n; ++k)
                                        if (k != i && k != j)
                                                other = std::min(other, d2(th, k));
                                if (other - di > gap)
                                        out.insert({i, j});
                        }
                }
        for (double& t : cuts)
                t = std::remainder(t, 2 * std::numbers::pi);
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> probes;
        if (cuts.empty())
                probes.push_back(0.0);
        for (std::size_t k = 0; k < cuts.size(); ++k) {
                const double a = cuts[k], b = k + 1 < cuts.size() ? cuts[k + 1] : cuts[0] + 2 * std::numbers::pi;
                probes.push_back(0.5 * (a + b));
        }
        for (double th : probes) {
                int best = 0;
                for (int k = 1; k < n; ++k)
                        if (d2(th, k) < d2(th, best))
                                best = k;
                out.insert({best});
        }
        return out;
}

// Witness complex by subset enumeration: sigma is witnessed when some w has every vertex of sigma
// at most as far as every other landmark; kept when all of its faces are kept.
inline std::set<Simplex> witness_complex(const std::vector<Point>& L, const std::vector<Point>& W, int top)
{
        const int n = static_cast<int>(L.size());
        std::set<Simplex> witnessed;
        for (int mask = 1; mask < (1 << n); ++mask) {
                Simplex s;
                for (int i = 0; i < n; ++i)
                        if (mask >> i & 1)
                                s.push_back(i);
                if (static_cast<int>(s.size()) > top + 1)
                        continue;
                for (const Point& w : W) {
                        double in = 0, outside = std::numeric_limits<double>::infinity();
                        for (int i = 0; i < n; ++i) {
                                const double d = rdel::dist2(w, L[i]);
                                if (mask >> i & 1)
                                        in = std::max(in, d);
                                else
                                        outside = std::min(outside, d);
                        }
                        if (in <= outside) {
                                witnessed.insert(s);
                                break;
                        }
                }
        }
        std::set<Simplex> kept;
        for (std::size_t k = 1; k <= static_cast<std::size_t>(top + 1); ++k)
                for (const Simplex& s : witnessed) {
                        if (s.size() != k)
                                continue;
                        bool ok = true;
                        if (k > 1)
                                for (std::size_t drop = 0; drop < k && ok; ++drop) {
                                        Simplex f = s;
                                        f.erase(f.begin() + drop);
                                        ok = kept.count(f) > 0;
                                }
                        if (ok)
                                kept.insert(s);
                }
        return kept;
}

inline std::set<Simplex> all_simplices(const rdel::SimplicialComplex& k)
{
        std::set<Simplex> out;
        for (int d = 0; d <= k.dimension(); ++d)
                out.insert(k.simplices(d).begin(), k.simplices(d).end());
        return out;
}

// Closure of a few random top simplices over nv vertices.
inline rdel::SimplicialComplex random_complex(std::mt19937_64& rng, int nv, int max_dim, int count)
{
        rdel::SimplicialComplex k;
        std::uniform_int_distribution<int> dim(0, max_dim);
        for (int c = 0; c < count; ++c) {
                std::vector<int> v(nv);
                for (int i = 0; i < nv; ++i)
                        v[i] = i;
                std::shuffle(v.begin(), v.end(), rng);
                v.resize(dim(rng) + 1);
                k.insert(rdel::make_simplex(v));
        }
        return k;
}

// Euler characteristic from face counts, independent of the library routine.
inline long chi_from_counts(const rdel::SimplicialComplex& k)
{
        long chi = 0;
        for (int d = 0; d <= k.dimension(); ++d)
                chi += (d % 2 ? -1 : 1) * static_cast<long>(k.count(d));
        return chi;
}

inline long chi_from_betti(const std::vector<long>& b)
{
        long chi = 0;
        for (std::size_t d = 0; d < b.size(); ++d)
                chi += (d % 2 ? -1 : 1) * b[d];
        return chi;
}

// Random points in the annulus r0 <= |x| <= r1; r0 = r1 = 1 puts them on the unit circle.
inline std::vector<Point> annulus_points(std::mt19937_64& rng, int n, double r0, double r1)
{
        std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi), rad(r0, r1);
        std::vector<Point> out;
        for (int i = 0; i < n; ++i) {
                const double a = ang(rng), r = rad(rng);
                out.push_back(Point{r * std::cos(a), r * std::sin(a)});
        }
        return out;
}

inline std::vector<Point> box_points(std::mt19937_64& rng, int n, int d, double lo = -1, double hi = 1)
{
        std::uniform_real_distribution<double> u(lo, hi);
        std::vector<Point> out;
        for (int i = 0; i < n; ++i) {
                Point p(d);
                for (int k = 0; k < d; ++k)
                        p[k] = u(rng);
                out.push_back(p);
        }
        return out;
}

} // namespace oracle
