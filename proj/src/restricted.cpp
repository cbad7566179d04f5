#include "rdel/restricted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rdel {

namespace {

struct Cell {
        std::vector<ParamPoint> v;
        std::vector<double> f;
};

double pdist(const ParamPoint& a, const ParamPoint& b)
{
        return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                         (a[2] - b[2]) * (a[2] - b[2]));
}

ParamPoint pmid(const ParamPoint& a, const ParamPoint& b)
{
        return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
}

// Gate discontinuities of bumps that may lie within diam of x.
double local_jump(const ImplicitManifold& m, const Point& x, double diam)
{
        double j = 0.0;
        for (const Bump& b : m.bumps())
                for (const Lobe& l : b.lobes) {
                        Point y = x - l.center;
                        double along = dot(y, b.axis);
                        double r = norm(y - b.axis * along);
                        if (std::fabs(along + b.gate) <= diam && r <= l.support + diam) {
                                j += b.max_apex();
                                break;
                        }
                }
        return j;
}

class FaceSearch {
public:
        FaceSearch(const VoronoiFace& face, const ImplicitManifold& m, const IntersectionOptions& opt)
            : face_(face), m_(m), opt_(opt), lip_(m.lipschitz())
        {
                h_ = opt.resolution > 0.0 ? opt.resolution : tol.resolution * m.extent();
                refine_ = opt.refine * std::max(1.0, m.extent());
        }

        IntersectionResult run()
        {
                IntersectionResult res;
                std::vector<Cell> stack;
                for (auto& s : face_.polytope.simplices()) {
                        Cell c;
                        c.v = s;
                        for (const auto& p : s)
                                c.f.push_back(F(p));
                        stack.push_back(std::move(c));
                }
                if (opt_.first_only && fast_path(stack, res))
                        return res;
                while (!stack.empty()) {
                        Cell c = std::move(stack.back());
                        stack.pop_back();
                        ++res.cells;
                        double diam = 0.0;
                        int ei = 0, ej = 1;
                        for (std::size_t i = 0; i < c.v.size(); ++i)
                                for (std::size_t j = i + 1; j < c.v.size(); ++j) {
                                        double l = pdist(c.v[i], c.v[j]);
                                        if (l > diam) {
                                                diam = l;
                                                ei = static_cast<int>(i);
                                                ej = static_cast<int>(j);
                                        }
                                }
                        int neg = -1, pos = -1;
                        double fmax = 0.0;
                        for (std::size_t i = 0; i < c.v.size(); ++i) {
                                if (c.f[i] <= 0.0)
                                        neg = static_cast<int>(i);
                                if (c.f[i] >= 0.0)
                                        pos = static_cast<int>(i);
                                fmax = std::max(fmax, std::fabs(c.f[i]));
                        }
                        if (neg >= 0 && pos >= 0) {
                                if (opt_.first_only || diam <= h_) {
                                        add_root(c.v[neg], c.f[neg], c.v[pos], c.f[pos], res);
                                        if (opt_.first_only && !res.points.empty())
                                                return res;
                                        continue;
                                }
                        } else {
                                Point centre = face_.ambient(centroid(c.v));
                                if (fmax > lip_ * diam + local_jump(m_, centre, diam))
                                        continue;
                                if (diam < opt_.min_cell) {
                                        res.ambiguous = true;
                                        res.ambiguous_at.push_back(centre);
                                        continue;
                                }
                        }
                        ParamPoint mid = pmid(c.v[ei], c.v[ej]);
                        double fm = F(mid);
                        Cell a = c, b = c;
                        a.v[ej] = mid;
                        a.f[ej] = fm;
                        b.v[ei] = mid;
                        b.f[ei] = fm;
                        stack.push_back(std::move(a));
                        stack.push_back(std::move(b));
                }
                return res;
        }

private:
        const VoronoiFace& face_;
        const ImplicitManifold& m_;
        IntersectionOptions opt_;
        double lip_;
        double h_ = 0.0;
        double refine_ = 0.0;

        double F(const ParamPoint& s) const { return m_.field(face_.ambient(s)); }

        static ParamPoint centroid(const std::vector<ParamPoint>& v)
        {
                ParamPoint c{};
                for (const auto& p : v)
                        for (int i = 0; i < 3; ++i)
                                c[i] += p[i] / v.size();
                return c;
        }

        bool fast_path(const std::vector<Cell>& cells, IntersectionResult& res)
        {
                // the face is convex, so opposite signs anywhere give a crossing on the joining segment
                const ParamPoint* a = nullptr;
                const ParamPoint* b = nullptr;
                double fa = 0, fb = 0;
                for (const Cell& c : cells)
                        for (std::size_t i = 0; i < c.v.size(); ++i) {
                                if (c.f[i] <= 0.0 && !a) {
                                        a = &c.v[i];
                                        fa = c.f[i];
                                }
                                if (c.f[i] >= 0.0 && !b) {
                                        b = &c.v[i];
                                        fb = c.f[i];
                                }
                        }
                if (!a || !b)
                        return false;
                add_root(*a, fa, *b, fb, res);
                return !res.points.empty();
        }

        void add_root(ParamPoint a, double fa, ParamPoint b, double fb, IntersectionResult& res)
        {
                // fa <= 0 <= fb
                for (int it = 0; it < 400 && fa != 0.0 && fb != 0.0 && pdist(a, b) > refine_; ++it) {
                        ParamPoint m = pmid(a, b);
                        double fm = F(m);
                        if (fm <= 0.0) {
                                a = m;
                                fa = fm;
                        } else {
                                b = m;
                                fb = fm;
                        }
                }
                ParamPoint r = std::fabs(fa) <= std::fabs(fb) ? a : b;
                Point y = face_.ambient(r);
                if (std::fabs(m_.field(y)) > tol.on_surface) {
                        // a gate jump, not a crossing
                        res.ambiguous = true;
                        res.ambiguous_at.push_back(y);
                        return;
                }
                for (const Point& q : res.points)
                        if (dist(q, y) < h_)
                                return;
                res.points.push_back(y);
                res.params.push_back(r);
        }
};

} // namespace

IntersectionResult face_surface_intersections(const VoronoiFace& face, const ImplicitManifold& m,
                                              const IntersectionOptions& opt)
{
        IntersectionResult res;
        if (face.empty)
                return res;
        if (face.dim == 0) {
                const Point& c = face.vertices.at(0);
                double f = m.field(c);
                if (f == 0.0) {
                        res.points.push_back(c);
                        res.params.push_back({});
                } else if (std::fabs(f) <= 1e-7) {
                        res.ambiguous = true;
                        res.ambiguous_at.push_back(c);
                }
                return res;
        }
        if (face.dim > 3)
                throw GeometryError("face_surface_intersections: face dimension must be 1, 2 or 3");
        return FaceSearch(face, m, opt).run();
}

Box manifold_box(const ImplicitManifold& m)
{
        const int d = m.dim();
        const double e = 1.1 * m.extent() + 1.0;
        Box b{Point(d), Point(d)};
        for (int i = 0; i < d; ++i) {
                b.lo[i] = -e;
                b.hi[i] = e;
        }
        return b;
}

namespace {

double competitor_margin(const VoronoiFace& face, const std::vector<Point>& landmarks, const Point& y, double r)
{
        double best = std::numeric_limits<double>::infinity();
        for (const HalfSpace& h : face.halfspaces)
                if (h.label >= 0)
                        best = std::min(best, dist(y, landmarks[h.label]) - r);
        return best;
}

} // namespace

RestrictedComplex build_restricted(const DelaunayTriangulation& t, const ImplicitManifold& m,
                                   const IntersectionOptions& opt_in)
{
        RestrictedComplex rc;
        rc.complex = SimplicialComplex(t.landmarks);
        for (const Point& l : t.landmarks)
                if (std::fabs(m.field(l)) > tol.on_surface)
                        throw GeometryError("build_restricted: landmark off the surface: " + to_string(l));
        IntersectionOptions opt = opt_in;
        opt.first_only = true;
        const Box box = manifold_box(m);
        for (int v = 0; v < static_cast<int>(t.landmarks.size()); ++v) {
                rc.complex.insert({v});
                double margin = std::numeric_limits<double>::infinity();
                for (int q : t.neighbors_of({v}))
                        margin = std::min(margin, dist(t.landmarks[v], t.landmarks[q]));
                rc.evidence[{v}] = {t.landmarks[v], 0.0, margin};
        }
        for (int k = t.dim; k >= 1; --k) {
                for (const Simplex& s : t.simplices(k)) {
                        if (rc.complex.contains(s))
                                continue;
                        if (t.dim - k > 3) {
                                rc.ambiguous.push_back(s);
                                continue;
                        }
                        VoronoiFace face;
                        try {
                                face = voronoi_face(t, s, box);
                        } catch (const GeometryError&) {
                                // numerically flat simplex: no reliable dual face
                                rc.ambiguous.push_back(s);
                                continue;
                        }
                        if (face.empty)
                                continue;
                        IntersectionResult r = face_surface_intersections(face, m, opt);
                        if (r.points.empty()) {
                                if (r.ambiguous)
                                        rc.ambiguous.push_back(s);
                                continue;
                        }
                        const Point& y = r.points.front();
                        const double rad = dist(y, t.landmarks[s[0]]);
                        rc.evidence[s] = {y, rad, competitor_margin(face, t.landmarks, y, rad)};
                        for (int j = 0; j < k; ++j)
                                for (const Simplex& f : faces_of_dim(s, j))
                                        if (!rc.evidence.count(f))
                                                rc.evidence[f] = {y, dist(y, t.landmarks[f[0]]), 0.0};
                        rc.complex.insert(s);
                }
        }
        return rc;
}

bool verify_evidence(const std::vector<Point>& landmarks, const Simplex& sigma, const ImplicitManifold& m,
                     const Evidence& e, std::string* why)
{
        auto fail = [&](const std::string& msg) {
                if (why)
                        *why = msg;
                return false;
        };
        if (std::fabs(m.field(e.point)) > tol.on_surface)
                return fail("evidence off the surface");
        const double r = dist(e.point, landmarks.at(sigma[0]));
        for (int v : sigma)
                if (std::fabs(dist(e.point, landmarks.at(v)) - r) > tol.residual * std::max(1.0, r))
                        return fail("evidence not equidistant to the simplex vertices");
        for (int i = 0; i < static_cast<int>(landmarks.size()); ++i) {
                if (std::binary_search(sigma.begin(), sigma.end(), i))
                        continue;
                if (dist(e.point, landmarks[i]) < r - tol.residual)
                        return fail("landmark " + std::to_string(i) + " is closer than the simplex");
        }
        return true;
}

MembershipCertificate restricted_membership_certificate(const std::vector<Point>& landmarks, const Simplex& sigma,
                                                        const ImplicitManifold& m, const Point& candidate)
{
        if (std::fabs(m.field(candidate)) > 1e-3)
                throw GeometryError("restricted_membership_certificate: candidate too far from M");
        std::vector<Point> gens;
        for (int v : sigma)
                gens.push_back(landmarks.at(v));
        const int d = candidate.dim();
        std::vector<Point> edges;
        for (std::size_t i = 1; i < gens.size(); ++i)
                edges.push_back(gens[i] - gens[0]);
        AffineFlat flat;
        flat.base = circumcenter(gens).center;
        if (edges.empty())
                for (int i = 0; i < d; ++i)
                        flat.directions.push_back(Point::unit(d, i));
        else
                flat.directions = orthogonal_complement(edges, d);

        MembershipCertificate cert;
        const double scale = std::max(1.0, m.extent());
        const double r0 = dist(flat.base, gens[0]);
        Point y = flat.project(candidate);
        for (; cert.iterations < 50; ++cert.iterations) {
                double f = m.field(y);
                if (std::fabs(f) <= 1e-14 * scale)
                        break;
                Point g = m.gradient(y);
                Point gp(d);
                for (const Point& e : flat.directions)
                        gp += e * dot(g, e);
                double gg = norm2(gp);
                if (gg == 0.0)
                        return cert;
                y = flat.project(y - gp * (f / gg));
        }
        if (std::fabs(m.field(y)) > tol.on_surface || dist(y, candidate) > 0.1 * std::max(r0, 1e-3 * scale))
                return cert; // diverged: no certificate
        const double r = dist(y, gens[0]);
        for (const Point& g : gens)
                if (std::fabs(dist(y, g) - r) > tol.residual * std::max(1.0, r))
                        return cert;
        cert.evidence = {y, r, std::numeric_limits<double>::infinity()};
        cert.status = CertificateStatus::Certified;
        for (int i = 0; i < static_cast<int>(landmarks.size()); ++i) {
                if (std::binary_search(sigma.begin(), sigma.end(), i))
                        continue;
                double gap = dist(y, landmarks[i]) - r;
                if (gap < cert.evidence.margin) {
                        cert.evidence.margin = gap;
                        if (gap < -tol.residual) {
                                cert.status = CertificateStatus::Absent;
                                cert.blocker = i;
                        }
                }
        }
        return cert;
}

std::string to_string(CertificateStatus s)
{
        switch (s) {
        case CertificateStatus::Certified:
                return "certified";
        case CertificateStatus::Absent:
                return "absent";
        case CertificateStatus::NoCertificate:
                return "no certificate";
        }
        return "?";
}

} // namespace rdel
