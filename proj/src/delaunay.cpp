#include "rdel/delaunay.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

namespace rdel {

bool Box::contains(const Point& x) const
{
        for (int i = 0; i < x.dim(); ++i)
                if (x[i] < lo[i] || x[i] > hi[i])
                        return false;
        return true;
}

Box bounding_box(const std::vector<Point>& pts, double margin)
{
        if (pts.empty())
                throw GeometryError("bounding_box: no points");
        Box b{pts[0], pts[0]};
        for (const Point& p : pts)
                for (int i = 0; i < p.dim(); ++i) {
                        b.lo[i] = std::min(b.lo[i], p[i]);
                        b.hi[i] = std::max(b.hi[i], p[i]);
                }
        for (int i = 0; i < b.lo.dim(); ++i) {
                b.lo[i] -= margin;
                b.hi[i] += margin;
        }
        return b;
}

// ---------------------------------------------------------------- lifted hull

namespace {

struct Facet {
        std::array<int, kMaxDim> v{};
        std::array<int, kMaxDim> nb{};
        std::vector<int> outside;
        bool alive = true;
        unsigned mark = 0;
};

class LiftedHull {
public:
        LiftedHull(const std::vector<Point>& pts, std::uint64_t seed)
            : pts_(pts), input_count_(static_cast<int>(pts.size())), d_(pts.at(0).dim()), n_(d_ + 1)
        {
                for (const Point& p : pts_)
                        if (p.dim() != d_ || !p.finite())
                                throw GeometryError("build_delaunay: inconsistent or non-finite input");
                if (d_ + 1 >= kMaxDim + 1)
                        throw GeometryError("build_delaunay: dimension too large");
                if (static_cast<int>(pts_.size()) < d_ + 1)
                        throw GeometryError("build_delaunay: need at least d+1 points");
                std::vector<Point> sorted = pts_;
                std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
                        return std::lexicographical_compare(a.data(), a.data() + a.dim(), b.data(), b.data() + b.dim());
                });
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                        throw GeometryError("build_delaunay: duplicate points");
                order_.resize(pts_.size());
                std::iota(order_.begin(), order_.end(), 0);
                std::mt19937_64 rng(seed);
                for (std::size_t i = order_.size(); i > 1; --i) {
                        std::size_t j = rng() % i;
                        std::swap(order_[i - 1], order_[j]);
                }
        }

        void run()
        {
                auto simplex = initial_simplex();
                if (simplex.empty()) {
                        // Cospherical input (or exactly d+1 points): add a point outside the common
                        // sphere; cells using it are discarded afterwards.
                        auto base = spanning_points();
                        if (base.empty()) {
                                flat_input_ = true;
                                return;
                        }
                        std::vector<Point> s;
                        for (int i : base)
                                s.push_back(pts_[i]);
                        Circumsphere cs = circumcenter(s);
                        pts_.push_back(cs.center + Point::unit(d_, 0) * (2.0 * cs.radius + 1.0));
                        order_.insert(order_.begin(), input_count_);
                        simplex = initial_simplex();
                        if (simplex.empty()) {
                                flat_input_ = true;
                                return;
                        }
                }
                make_initial(simplex);
                std::vector<char> used(pts_.size(), 0);
                for (int i : simplex)
                        used[i] = 1;
                for (int idx : order_) {
                        if (used[idx])
                                continue;
                        int f = first_visible(idx);
                        if (f < 0)
                                throw GeometryError("build_delaunay: point not outside hull (duplicate?)");
                        facets_[f].outside.push_back(idx);
                }
                std::vector<int> work;
                for (std::size_t f = 0; f < facets_.size(); ++f)
                        work.push_back(static_cast<int>(f));
                while (!work.empty()) {
                        int f = work.back();
                        if (!facets_[f].alive || facets_[f].outside.empty()) {
                                work.pop_back();
                                continue;
                        }
                        int p = facets_[f].outside.back();
                        facets_[f].outside.pop_back();
                        insert(p, f, work);
                }
        }

        bool flat_input() const { return flat_input_; }

        DelaunayTriangulation result() const
        {
                DelaunayTriangulation t;
                t.dim = d_;
                t.landmarks.assign(pts_.begin(), pts_.begin() + input_count_);
                std::vector<int> cell_of(facets_.size(), -1);
                std::vector<Point> buf(n_);
                for (std::size_t f = 0; f < facets_.size(); ++f) {
                        if (!facets_[f].alive)
                                continue;
                        bool synthetic = false;
                        for (int i = 0; i < n_; ++i) {
                                buf[i] = pts_[facets_[f].v[i]];
                                synthetic |= facets_[f].v[i] >= input_count_;
                        }
                        if (!synthetic && orientation(buf) > 0) {
                                cell_of[f] = static_cast<int>(t.cells.size());
                                t.cells.emplace_back(facets_[f].v.begin(), facets_[f].v.begin() + n_);
                        }
                }
                t.adjacency.resize(t.cells.size());
                for (std::size_t f = 0; f < facets_.size(); ++f) {
                        int c = cell_of[f];
                        if (c < 0)
                                continue;
                        std::vector<std::pair<int, int>> vn;
                        for (int i = 0; i < n_; ++i)
                                vn.push_back({facets_[f].v[i], cell_of[facets_[f].nb[i]]});
                        std::sort(vn.begin(), vn.end());
                        for (int i = 0; i < n_; ++i) {
                                t.cells[c][i] = vn[i].first;
                                t.adjacency[c].push_back(vn[i].second);
                        }
                }
                t.vertex_cells.resize(input_count_);
                for (std::size_t c = 0; c < t.cells.size(); ++c)
                        for (int v : t.cells[c])
                                t.vertex_cells[v].push_back(static_cast<int>(c));
                return t;
        }

private:
        int orient(int f, int p) const
        {
                std::array<Point, kMaxDim + 1> buf;
                for (int i = 0; i < n_; ++i)
                        buf[i] = pts_[facets_[f].v[i]];
                buf[n_] = pts_[p];
                return lifted_orientation(std::span<const Point>(buf.data(), n_ + 1));
        }

        std::vector<int> initial_simplex() const
        {
                // greedy rank growth on lifted coordinates, then exact confirmation
                std::vector<int> chosen{order_[0]};
                std::vector<std::vector<double>> basis;
                auto lifted = [&](int i) {
                        std::vector<double> v(n_);
                        for (int j = 0; j < d_; ++j)
                                v[j] = pts_[i][j] - pts_[order_[0]][j];
                        v[d_] = norm2(pts_[i]) - norm2(pts_[order_[0]]);
                        return v;
                };
                double scale = 0.0;
                for (int i : order_) {
                        auto v = lifted(i);
                        scale = std::max(scale, std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)));
                }
                for (int pass = 0; pass < 2 && static_cast<int>(chosen.size()) < n_ + 1; ++pass) {
                        for (int i : order_) {
                                if (static_cast<int>(chosen.size()) == n_ + 1)
                                        break;
                                if (std::find(chosen.begin(), chosen.end(), i) != chosen.end())
                                        continue;
                                auto v = lifted(i);
                                for (const auto& b : basis) {
                                        double c = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
                                        for (int j = 0; j < n_; ++j)
                                                v[j] -= c * b[j];
                                }
                                double len = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
                                double thresh = pass == 0 ? 1e-6 * scale : 1e-13 * scale;
                                if (len > thresh) {
                                        for (double& x : v)
                                                x /= len;
                                        basis.push_back(v);
                                        chosen.push_back(i);
                                }
                        }
                }
                if (static_cast<int>(chosen.size()) < n_ + 1)
                        return {};
                std::vector<Point> buf;
                for (int i : chosen)
                        buf.push_back(pts_[i]);
                if (lifted_orientation(buf) == 0)
                        return {};
                return chosen;
        }

        void make_initial(const std::vector<int>& s)
        {
                std::vector<int> created;
                for (int omit = 0; omit <= n_; ++omit) {
                        Facet f;
                        int k = 0;
                        for (int i = 0; i <= n_; ++i)
                                if (i != omit)
                                        f.v[k++] = s[i];
                        facets_.push_back(f);
                        int id = static_cast<int>(facets_.size()) - 1;
                        if (orient(id, s[omit]) < 0)
                                std::swap(facets_[id].v[0], facets_[id].v[1]);
                        created.push_back(id);
                }
                link(created, {});
        }

        // Matches ridges among the given facets; ridges already linked are skipped.
        void link(const std::vector<int>& fs, const std::vector<std::pair<int, int>>& fixed)
        {
                std::map<std::vector<int>, std::pair<int, int>> open;
                std::set<std::pair<int, int>> skip(fixed.begin(), fixed.end());
                for (int f : fs) {
                        for (int i = 0; i < n_; ++i) {
                                if (skip.count({f, i}))
                                        continue;
                                std::vector<int> key;
                                for (int j = 0; j < n_; ++j)
                                        if (j != i)
                                                key.push_back(facets_[f].v[j]);
                                std::sort(key.begin(), key.end());
                                auto it = open.find(key);
                                if (it == open.end()) {
                                        open.emplace(std::move(key), std::make_pair(f, i));
                                } else {
                                        facets_[f].nb[i] = it->second.first;
                                        facets_[it->second.first].nb[it->second.second] = f;
                                        open.erase(it);
                                }
                        }
                }
                if (!open.empty())
                        throw GeometryError("build_delaunay: inconsistent hull ridges");
        }

        int first_visible(int p) const
        {
                for (std::size_t f = 0; f < facets_.size(); ++f)
                        if (facets_[f].alive && orient(static_cast<int>(f), p) < 0)
                                return static_cast<int>(f);
                return -1;
        }

        void insert(int p, int start, std::vector<int>& work)
        {
                ++epoch_;
                std::vector<int> visible{start};
                facets_[start].mark = epoch_;
                std::vector<std::pair<int, int>> horizon; // (visible facet, slot)
                std::vector<int> rejected;
                for (std::size_t k = 0; k < visible.size(); ++k) {
                        int f = visible[k];
                        for (int i = 0; i < n_; ++i) {
                                int g = facets_[f].nb[i];
                                if (facets_[g].mark == epoch_)
                                        continue;
                                if (reject_mark_.size() <= static_cast<std::size_t>(g))
                                        reject_mark_.resize(facets_.size() * 2, 0);
                                if (reject_mark_[g] == epoch_) {
                                        horizon.push_back({f, i});
                                        continue;
                                }
                                if (orient(g, p) < 0) {
                                        facets_[g].mark = epoch_;
                                        visible.push_back(g);
                                } else {
                                        reject_mark_[g] = epoch_;
                                        rejected.push_back(g);
                                        horizon.push_back({f, i});
                                }
                        }
                }
                std::vector<int> created;
                std::vector<std::pair<int, int>> fixed;
                for (auto [f, i] : horizon) {
                        Facet nf;
                        nf.v = facets_[f].v;
                        nf.v[i] = p;
                        int g = facets_[f].nb[i];
                        nf.nb[i] = g;
                        facets_.push_back(std::move(nf));
                        int id = static_cast<int>(facets_.size()) - 1;
                        for (int j = 0; j < n_; ++j)
                                if (facets_[g].nb[j] == f)
                                        facets_[g].nb[j] = id;
                        created.push_back(id);
                        fixed.push_back({id, i});
                }
                link(created, fixed);
                std::vector<int> orphans;
                for (int f : visible) {
                        facets_[f].alive = false;
                        for (int x : facets_[f].outside)
                                orphans.push_back(x);
                        facets_[f].outside.clear();
                        facets_[f].outside.shrink_to_fit();
                }
                for (int x : orphans) {
                        int target = -1;
                        for (int g : created)
                                if (orient(g, x) < 0) {
                                        target = g;
                                        break;
                                }
                        if (target < 0)
                                for (int g : rejected)
                                        if (facets_[g].alive && orient(g, x) < 0) {
                                                target = g;
                                                break;
                                        }
                        if (target < 0)
                                target = first_visible(x);
                        if (target < 0)
                                throw GeometryError("build_delaunay: lost a point (duplicate?)");
                        facets_[target].outside.push_back(x);
                }
                for (int g : created)
                        if (!facets_[g].outside.empty())
                                work.push_back(g);
                for (int g : rejected)
                        if (!facets_[g].outside.empty())
                                work.push_back(g);
        }

        // Affinely independent input points (d+1 of them) in the original space.
        std::vector<int> spanning_points() const
        {
                std::vector<int> chosen{order_[0]};
                std::vector<Point> basis;
                double scale = 0.0;
                for (int i : order_)
                        scale = std::max(scale, dist(pts_[i], pts_[order_[0]]));
                for (int i : order_) {
                        if (static_cast<int>(chosen.size()) == d_ + 1)
                                break;
                        Point v = pts_[i] - pts_[order_[0]];
                        for (const Point& b : basis)
                                v -= b * dot(v, b);
                        double len = norm(v);
                        if (len > 1e-12 * scale) {
                                basis.push_back(v * (1.0 / len));
                                chosen.push_back(i);
                        }
                }
                if (static_cast<int>(chosen.size()) < d_ + 1)
                        return {};
                std::vector<Point> buf;
                for (int i : chosen)
                        buf.push_back(pts_[i]);
                if (orientation(buf) == 0)
                        return {};
                return chosen;
        }

        std::vector<Point> pts_;
        int input_count_;
        int d_, n_;
        std::vector<int> order_;
        std::vector<Facet> facets_;
        std::vector<unsigned> reject_mark_;
        unsigned epoch_ = 0;
        bool flat_input_ = false;
};

} // namespace

DelaunayTriangulation build_delaunay(const std::vector<Point>& pts, std::uint64_t seed)
{
        if (pts.empty())
                throw GeometryError("build_delaunay: no points");
        LiftedHull hull(pts, seed);
        hull.run();
        if (hull.flat_input())
                throw GeometryError("build_delaunay: points are affinely degenerate");
        return hull.result();
}

bool DelaunayTriangulation::contains(const Simplex& s) const
{
        if (s.empty() || s[0] < 0 || s[0] >= static_cast<int>(vertex_cells.size()))
                return false;
        for (int c : vertex_cells[s[0]])
                if (std::includes(cells[c].begin(), cells[c].end(), s.begin(), s.end()))
                        return true;
        return false;
}

std::vector<int> DelaunayTriangulation::neighbors_of(const Simplex& s) const
{
        std::vector<int> out;
        for (int v : s)
                for (int c : vertex_cells.at(v))
                        for (int w : cells[c])
                                out.push_back(w);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        std::vector<int> r;
        std::set_difference(out.begin(), out.end(), s.begin(), s.end(), std::back_inserter(r));
        return r;
}

std::vector<Simplex> DelaunayTriangulation::simplices(int k) const
{
        std::set<Simplex> all;
        for (const Simplex& c : cells)
                for (Simplex& f : faces_of_dim(c, k))
                        all.insert(std::move(f));
        return {all.begin(), all.end()};
}

SimplicialComplex DelaunayTriangulation::complex() const
{
        SimplicialComplex k(landmarks);
        for (const Simplex& c : cells)
                k.insert(c);
        for (int v = 0; v < static_cast<int>(landmarks.size()); ++v)
                k.insert({v});
        return k;
}

// ---------------------------------------------------------------- Voronoi faces

Point VoronoiFace::ambient(const ParamPoint& s) const
{
        return flat.at(std::span<const double>(s.data(), static_cast<std::size_t>(dim)));
}

std::vector<int> VoronoiFace::active_labels() const
{
        std::vector<int> out;
        for (const auto& f : polytope.facets)
                if (f.label >= 0)
                        out.push_back(f.label);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
}

VoronoiFace make_voronoi_face(const std::vector<Point>& landmarks, const Simplex& sigma,
                              const std::vector<int>& candidates, const Box& box)
{
        if (sigma.empty())
                throw GeometryError("voronoi face of empty simplex");
        const int d = landmarks.at(sigma[0]).dim();
        VoronoiFace vf;
        vf.generator = sigma;
        vf.dim = d - (static_cast<int>(sigma.size()) - 1);
        if (vf.dim < 0)
                throw GeometryError("voronoi face: simplex dimension exceeds ambient dimension");
        std::vector<Point> gens;
        for (int i : sigma)
                gens.push_back(landmarks.at(i));
        Circumsphere cs = circumcenter(gens);
        std::vector<Point> edges;
        for (std::size_t i = 1; i < gens.size(); ++i)
                edges.push_back(gens[i] - gens[0]);
        vf.flat.base = cs.center;
        vf.flat.directions = edges.empty() ? orthogonal_complement({}, d) : orthogonal_complement(edges, d);
        if (edges.empty()) {
                vf.flat.directions.clear();
                for (int i = 0; i < d; ++i)
                        vf.flat.directions.push_back(Point::unit(d, i));
        }
        const Point& base = vf.flat.base;
        const double r2 = dist2(base, gens[0]);
        for (int q : candidates) {
                if (std::binary_search(sigma.begin(), sigma.end(), q))
                        continue;
                HalfSpace h;
                h.normal = 2.0 * (landmarks[q] - gens[0]);
                h.offset = dist2(landmarks[q], base) - r2;
                h.label = q;
                vf.halfspaces.push_back(h);
        }
        double reach = 0.0;
        for (int i = 0; i < d; ++i) {
                HalfSpace hi{Point::unit(d, i), box.hi[i] - base[i], kBoxLabelBase - 2 * i};
                HalfSpace lo{-Point::unit(d, i), base[i] - box.lo[i], kBoxLabelBase - 2 * i - 1};
                vf.halfspaces.push_back(hi);
                vf.halfspaces.push_back(lo);
                double m = std::max(std::fabs(box.hi[i] - base[i]), std::fabs(base[i] - box.lo[i]));
                reach += m * m;
        }
        if (vf.dim == 0) {
                vf.empty = false;
                for (const auto& h : vf.halfspaces)
                        if (h.offset < 0.0)
                                vf.empty = true;
                vf.vertices = {base};
                vf.polytope.dim = 0;
                vf.polytope.empty = vf.empty;
                return vf;
        }
        if (vf.dim > 3)
                throw GeometryError("voronoi face: dimension above 3 is not supported");
        std::vector<ParamHalfSpace> phs;
        for (const auto& h : vf.halfspaces) {
                ParamHalfSpace p;
                for (int j = 0; j < vf.dim; ++j)
                        p.n[j] = dot(h.normal, vf.flat.directions[j]);
                p.b = h.offset;
                p.label = h.label;
                phs.push_back(p);
        }
        vf.polytope = clip_cube(vf.dim, std::sqrt(reach) * 1.01 + 1.0, phs);
        vf.empty = vf.polytope.empty;
        if (vf.empty)
                return vf;
        for (const auto& v : vf.polytope.vertices)
                vf.vertices.push_back(vf.ambient(v));
        for (const auto& f : vf.polytope.facets)
                if (f.label < 0)
                        vf.bounded = false;
        if (vf.dim == 1)
                for (std::size_t i = 0; i < 2; ++i)
                        if (vf.polytope.facets[i].label < 0)
                                vf.rays.push_back(i == 0 ? -vf.flat.directions[0] : vf.flat.directions[0]);
        return vf;
}

VoronoiFace voronoi_face(const DelaunayTriangulation& t, const Simplex& sigma, const Box& box)
{
        if (!t.contains(sigma))
                throw GeometryError("voronoi_face: simplex not in triangulation");
        return make_voronoi_face(t.landmarks, sigma, t.neighbors_of(sigma), box);
}

VoronoiFace local_voronoi_face(const std::vector<Point>& landmarks, const Simplex& sigma, const Box& box)
{
        std::vector<int> all(landmarks.size());
        std::iota(all.begin(), all.end(), 0);
        return make_voronoi_face(landmarks, sigma, all, box);
}

namespace {

void check_circumscribes(const std::vector<Point>& pts, const Simplex& sigma, const Ball& ball)
{
        const double tol = default_tolerances().on_surface * std::max(1.0, ball.radius);
        for (int v : sigma)
                if (std::fabs(dist(pts.at(v), ball.center) - ball.radius) > tol)
                        throw GeometryError("is_delaunay_simplex: ball does not circumscribe the simplex");
}

} // namespace

bool is_delaunay_simplex(const std::vector<Point>& pts, const Simplex& sigma, const Ball& ball)
{
        check_circumscribes(pts, sigma, ball);
        // reference: the simplex vertex farthest from the center
        int ref = sigma[0];
        for (int v : sigma)
                if (dist2(pts[v], ball.center) > dist2(pts[ref], ball.center))
                        ref = v;
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
                if (std::binary_search(sigma.begin(), sigma.end(), i))
                        continue;
                if (compare_distance(ball.center, pts[i], pts[ref]) < 0)
                        return false;
        }
        return true;
}

double ball_clearance(const std::vector<Point>& pts, const Simplex& sigma, const Ball& ball)
{
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
                if (std::binary_search(sigma.begin(), sigma.end(), i))
                        continue;
                m = std::min(m, dist(pts[i], ball.center) - ball.radius);
        }
        return m;
}

} // namespace rdel
