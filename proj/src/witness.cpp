#include "rdel/witness.hpp"

#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rdel {

WitnessSet witnesses_from_cloud(const Cloud& cloud)
{
        WitnessSet w;
        w.points = cloud.points;
        w.source = "cloud";
        w.delta = cloud.covering_bound;
        w.notes.push_back("covering bound of the cloud construction");
        return w;
}

WitnessSet explicit_witnesses(std::vector<Point> pts)
{
        WitnessSet w;
        w.points = std::move(pts);
        w.source = "explicit";
        return w;
}

void measure_covering(WitnessSet& w, const Cloud& cloud, double hint)
{
        w.delta = covering_radius(w.points, cloud, hint);
        w.notes.push_back("covering radius measured against a cloud of " + std::to_string(cloud.points.size()) +
                          " points");
}

bool witnesses_simplex(const Point& w, const Simplex& sigma, const std::vector<Point>& landmarks)
{
        if (sigma.empty())
                return false;
        int far = sigma[0];
        for (int v : sigma)
                if (compare_distance(w, landmarks.at(v), landmarks.at(far)) > 0)
                        far = v;
        for (int q = 0; q < static_cast<int>(landmarks.size()); ++q) {
                if (std::binary_search(sigma.begin(), sigma.end(), q))
                        continue;
                if (compare_distance(w, landmarks[q], landmarks[far]) < 0)
                        return false;
        }
        return true;
}

namespace {

double default_cell(const std::vector<Point>& pts)
{
        const int d = pts[0].dim();
        double side = 0.0;
        for (int i = 0; i < d; ++i) {
                double lo = pts[0][i], hi = pts[0][i];
                for (const Point& p : pts) {
                        lo = std::min(lo, p[i]);
                        hi = std::max(hi, p[i]);
                }
                side = std::max(side, hi - lo);
        }
        double c = side / std::max(1.0, std::pow(double(pts.size()), 1.0 / std::max(1, d - 1)));
        return c > 0.0 ? c : 1.0;
}

double choose(int n, int r)
{
        double c = 1.0;
        for (int i = 0; i < r; ++i)
                c = c * (n - i) / (i + 1);
        return c;
}

void combinations(const std::vector<int>& pool, int r, std::vector<int>& cur, std::size_t start,
                  std::vector<std::vector<int>>& out)
{
        if (static_cast<int>(cur.size()) == r) {
                out.push_back(cur);
                return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
                cur.push_back(pool[i]);
                combinations(pool, r, cur, i + 1, out);
                cur.pop_back();
        }
}

std::vector<Simplex> witnessed_with_grid(const Point& w, const std::vector<Point>& L, const PointGrid& grid,
                                         int max_dim)
{
        const int K = std::min<int>(max_dim + 1, static_cast<int>(L.size()));
        auto nn = grid.nearest(w, K);
        const double t = nn.back().first;
        // every landmark that could tie the K-th distance exactly
        std::vector<int> cand;
        grid.radius(w, std::sqrt(t * (1.0 + 1e-9)) + 1e-300, [&](int i, double) { cand.push_back(i); });
        std::sort(cand.begin(), cand.end(), [&](int a, int b) {
                int c = compare_distance(w, L[a], L[b]);
                return c < 0 || (c == 0 && a < b);
        });
        // group boundaries of exact ties
        std::vector<int> group_start(cand.size());
        for (std::size_t i = 0; i < cand.size(); ++i)
                group_start[i] = (i > 0 && compare_distance(w, L[cand[i]], L[cand[i - 1]]) == 0)
                                         ? group_start[i - 1]
                                         : static_cast<int>(i);
        std::vector<Simplex> out;
        for (int k = 0; k < K; ++k) {
                const int a = group_start[k];
                int b = k + 1;
                while (b < static_cast<int>(cand.size()) && group_start[b] == a)
                        ++b;
                std::vector<int> prefix(cand.begin(), cand.begin() + a);
                std::vector<int> pool(cand.begin() + a, cand.begin() + b);
                const int r = k + 1 - a;
                if (choose(static_cast<int>(pool.size()), r) > 1e5)
                        throw GeometryError("witness: tie group too large to enumerate");
                std::vector<std::vector<int>> picks;
                std::vector<int> cur;
                combinations(pool, r, cur, 0, picks);
                for (auto& p : picks) {
                        std::vector<int> s = prefix;
                        s.insert(s.end(), p.begin(), p.end());
                        out.push_back(make_simplex(s));
                }
        }
        return out;
}

} // namespace

std::vector<Simplex> witnessed_by(const Point& w, const std::vector<Point>& landmarks, int max_dim)
{
        if (landmarks.empty())
                return {};
        PointGrid grid(landmarks, default_cell(landmarks));
        return witnessed_with_grid(w, landmarks, grid, max_dim);
}

WitnessComplex build_witness_complex(const std::vector<Point>& landmarks, const WitnessSet& w, int max_dim)
{
        if (landmarks.empty())
                throw GeometryError("build_witness_complex: empty landmark set");
        const int d = landmarks[0].dim();
        int top = std::min<int>(static_cast<int>(landmarks.size()) - 1, d);
        if (max_dim >= 0)
                top = std::min(top, max_dim);
        PointGrid grid(landmarks, default_cell(landmarks));
        WitnessComplex wc;
        wc.complex = SimplicialComplex(landmarks);
        for (int i = 0; i < static_cast<int>(w.points.size()); ++i)
                for (const Simplex& s : witnessed_with_grid(w.points[i], landmarks, grid, top))
                        wc.witnessed.try_emplace(s, i);
        // keep simplices whose faces are all witnessed, by increasing dimension
        std::vector<std::vector<const std::pair<const Simplex, int>*>> by_dim(top + 1);
        for (const auto& kv : wc.witnessed)
                by_dim[kv.first.size() - 1].push_back(&kv);
        for (int k = 0; k <= top; ++k)
                for (const auto* kv : by_dim[k]) {
                        bool ok = true;
                        if (k > 0)
                                for (const Simplex& f : facets_of(kv->first))
                                        if (!wc.complex.contains(f)) {
                                                ok = false;
                                                break;
                                        }
                        if (ok) {
                                wc.complex.insert(kv->first);
                                wc.witness_of[kv->first] = kv->second;
                        }
                }
        return wc;
}

WitnessSet mandate_witnesses(const WitnessSet& w, const ImplicitManifold& m, const std::vector<MandatedFacet>& facets,
                             const std::vector<Point>& extra)
{
        WitnessSet out = w;
        auto add = [&](const Point& p, const std::string& what) {
                if (std::fabs(m.field(p)) > tol.on_surface)
                        throw GeometryError("mandate_witnesses: " + what + " is off the surface");
                if (std::find(out.points.begin(), out.points.end(), p) != out.points.end())
                        return;
                out.points.push_back(p);
                out.notes.push_back("mandated " + what + " " + to_string(p));
        };
        for (const MandatedFacet& f : facets) {
                if (!f.evidence)
                        throw GeometryError("mandate_witnesses: facet " + to_string(f.facet) + " has no certificate");
                add(f.evidence->point, "facet " + to_string(f.facet) + " evidence");
        }
        for (const Point& p : extra)
                add(p, "point");
        if (out.source.find("mandated") == std::string::npos)
                out.source += "+mandated";
        out.delta = -1.0; // stale until re-measured
        return out;
}

} // namespace rdel
