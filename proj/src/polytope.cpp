#include "rdel/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rdel {
namespace {

double dotk(const ParamPoint& a, const ParamPoint& b, int k)
{
        double s = 0.0;
        for (int i = 0; i < k; ++i)
                s += a[i] * b[i];
        return s;
}

ParamPoint lerp(const ParamPoint& a, const ParamPoint& b, double t)
{
        ParamPoint r{};
        for (int i = 0; i < 3; ++i)
                r[i] = a[i] + t * (b[i] - a[i]);
        return r;
}

// Same result whichever way the edge is traversed.
ParamPoint edge_cut(const ParamPoint& a, const ParamPoint& b, double da, double db)
{
        if (a < b)
                return lerp(a, b, da / (da - db));
        return lerp(b, a, db / (db - da));
}

Polytope clip_interval(double r, const std::vector<ParamHalfSpace>& hs)
{
        double lo = -r, hi = r;
        int llo = kCubeLabel, lhi = kCubeLabel - 1;
        for (const auto& h : hs) {
                const double n = h.n[0];
                if (n == 0.0) {
                        if (h.b < 0.0)
                                return {1, true, {}, {}};
                        continue;
                }
                const double s = h.b / n;
                if (n > 0.0 && s < hi) {
                        hi = s;
                        lhi = h.label;
                } else if (n < 0.0 && s > lo) {
                        lo = s;
                        llo = h.label;
                }
        }
        Polytope p;
        p.dim = 1;
        if (lo > hi)
                return p;
        p.empty = false;
        p.vertices = {ParamPoint{lo, 0, 0}, ParamPoint{hi, 0, 0}};
        p.facets = {ParamFacet{{0}, llo}, ParamFacet{{1}, lhi}};
        return p;
}

struct LabelledVertex {
        ParamPoint p;
        int label; // label of the edge leaving this vertex
};

Polytope clip_polygon(double r, const std::vector<ParamHalfSpace>& hs)
{
        std::vector<LabelledVertex> poly = {{{-r, -r, 0}, kCubeLabel - 2},
                                            {{r, -r, 0}, kCubeLabel - 1},
                                            {{r, r, 0}, kCubeLabel - 3},
                                            {{-r, r, 0}, kCubeLabel}};
        std::vector<LabelledVertex> out;
        for (const auto& h : hs) {
                out.clear();
                const std::size_t n = poly.size();
                for (std::size_t i = 0; i < n; ++i) {
                        const auto& cur = poly[i];
                        const auto& nxt = poly[(i + 1) % n];
                        double dc = dotk(h.n, cur.p, 2) - h.b;
                        double dn = dotk(h.n, nxt.p, 2) - h.b;
                        if (dc <= 0.0) {
                                out.push_back(cur);
                                if (dn > 0.0)
                                        out.push_back({edge_cut(cur.p, nxt.p, dc, dn), h.label});
                        } else if (dn <= 0.0) {
                                out.push_back({edge_cut(cur.p, nxt.p, dc, dn), cur.label});
                        }
                }
                // drop exact duplicates
                poly.clear();
                for (const auto& v : out)
                        if (poly.empty() || v.p != poly.back().p)
                                poly.push_back(v);
                while (poly.size() > 1 && poly.front().p == poly.back().p)
                        poly.pop_back();
                if (poly.size() < 3) {
                        Polytope e;
                        e.dim = 2;
                        return e;
                }
        }
        Polytope p;
        p.dim = 2;
        p.empty = false;
        for (std::size_t i = 0; i < poly.size(); ++i) {
                p.vertices.push_back(poly[i].p);
                p.facets.push_back({{static_cast<int>(i), static_cast<int>((i + 1) % poly.size())}, poly[i].label});
        }
        return p;
}

struct Face3 {
        std::vector<ParamPoint> pts;
        int label;
};

std::vector<ParamPoint> order_in_plane(std::vector<ParamPoint> pts, const ParamPoint& n)
{
        // dedupe
        std::vector<ParamPoint> u;
        for (const auto& p : pts) {
                bool dup = false;
                for (const auto& q : u)
                        if (std::fabs(p[0] - q[0]) + std::fabs(p[1] - q[1]) + std::fabs(p[2] - q[2]) == 0.0)
                                dup = true;
                if (!dup)
                        u.push_back(p);
        }
        if (u.size() < 3)
                return u;
        ParamPoint c{};
        for (const auto& p : u)
                for (int i = 0; i < 3; ++i)
                        c[i] += p[i] / u.size();
        // basis of the plane
        ParamPoint a = std::fabs(n[0]) < 0.9 ? ParamPoint{1, 0, 0} : ParamPoint{0, 1, 0};
        ParamPoint e1{n[1] * a[2] - n[2] * a[1], n[2] * a[0] - n[0] * a[2], n[0] * a[1] - n[1] * a[0]};
        double l = std::sqrt(dotk(e1, e1, 3));
        for (auto& x : e1)
                x /= l;
        ParamPoint e2{n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]};
        std::vector<std::pair<double, ParamPoint>> keyed;
        for (const auto& p : u) {
                ParamPoint d{p[0] - c[0], p[1] - c[1], p[2] - c[2]};
                keyed.push_back({std::atan2(dotk(d, e2, 3), dotk(d, e1, 3)), p});
        }
        std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<ParamPoint> out;
        for (auto& kp : keyed)
                out.push_back(kp.second);
        return out;
}

Polytope clip_polyhedron(double r, const std::vector<ParamHalfSpace>& hs)
{
        std::vector<Face3> faces;
        for (int axis = 0; axis < 3; ++axis) {
                for (int side = 0; side < 2; ++side) {
                        const double s = side ? r : -r;
                        const int a = (axis + 1) % 3, b = (axis + 2) % 3;
                        Face3 f;
                        f.label = kCubeLabel - (2 * axis + side);
                        const double corners[4][2] = {{-r, -r}, {r, -r}, {r, r}, {-r, r}};
                        for (const auto& cr : corners) {
                                ParamPoint p{};
                                p[axis] = s;
                                p[a] = cr[0];
                                p[b] = cr[1];
                                f.pts.push_back(p);
                        }
                        faces.push_back(std::move(f));
                }
        }
        for (const auto& h : hs) {
                double nn = std::sqrt(dotk(h.n, h.n, 3));
                if (nn == 0.0) {
                        if (h.b < 0.0)
                                faces.clear();
                        if (faces.empty())
                                break;
                        continue;
                }
                std::vector<Face3> next;
                std::vector<ParamPoint> cut;
                for (const auto& f : faces) {
                        Face3 g{{}, f.label};
                        const std::size_t n = f.pts.size();
                        for (std::size_t i = 0; i < n; ++i) {
                                const auto& cur = f.pts[i];
                                const auto& nxt = f.pts[(i + 1) % n];
                                double dc = dotk(h.n, cur, 3) - h.b;
                                double dn = dotk(h.n, nxt, 3) - h.b;
                                if (dc <= 0.0) {
                                        g.pts.push_back(cur);
                                        if (dc == 0.0)
                                                cut.push_back(cur);
                                        if (dn > 0.0) {
                                                auto x = edge_cut(cur, nxt, dc, dn);
                                                g.pts.push_back(x);
                                                cut.push_back(x);
                                        }
                                } else if (dn <= 0.0) {
                                        auto x = edge_cut(cur, nxt, dc, dn);
                                        g.pts.push_back(x);
                                        cut.push_back(x);
                                }
                        }
                        if (g.pts.size() >= 3)
                                next.push_back(std::move(g));
                }
                ParamPoint un{h.n[0] / nn, h.n[1] / nn, h.n[2] / nn};
                auto cap = order_in_plane(cut, un);
                if (cap.size() >= 3 && !next.empty())
                        next.push_back({cap, h.label});
                faces.swap(next);
                if (faces.empty())
                        break;
        }
        Polytope p;
        p.dim = 3;
        if (faces.size() < 4)
                return p;
        p.empty = false;
        for (const auto& f : faces) {
                ParamFacet pf;
                pf.label = f.label;
                for (const auto& q : f.pts) {
                        int idx = -1;
                        for (std::size_t i = 0; i < p.vertices.size(); ++i)
                                if (p.vertices[i] == q) {
                                        idx = static_cast<int>(i);
                                        break;
                                }
                        if (idx < 0) {
                                idx = static_cast<int>(p.vertices.size());
                                p.vertices.push_back(q);
                        }
                        if (pf.vertices.empty() || pf.vertices.back() != idx)
                                pf.vertices.push_back(idx);
                }
                if (pf.vertices.size() >= 3)
                        p.facets.push_back(std::move(pf));
        }
        return p;
}

} // namespace

ParamPoint Polytope::centroid() const
{
        ParamPoint c{};
        for (const auto& v : vertices)
                for (int i = 0; i < 3; ++i)
                        c[i] += v[i];
        for (auto& x : c)
                x /= std::max<std::size_t>(1, vertices.size());
        return c;
}

std::vector<std::vector<ParamPoint>> Polytope::simplices() const
{
        std::vector<std::vector<ParamPoint>> out;
        if (empty)
                return out;
        if (dim == 1) {
                out.push_back({vertices[0], vertices[1]});
        } else if (dim == 2) {
                if (vertices.size() == 3) {
                        out.push_back(vertices);
                } else {
                        ParamPoint c = centroid();
                        for (std::size_t i = 0; i < vertices.size(); ++i)
                                out.push_back({c, vertices[i], vertices[(i + 1) % vertices.size()]});
                }
        } else if (dim == 3) {
                ParamPoint c = centroid();
                for (const auto& f : facets) {
                        const std::size_t n = f.vertices.size();
                        if (n == 3) {
                                out.push_back({c, vertices[f.vertices[0]], vertices[f.vertices[1]],
                                               vertices[f.vertices[2]]});
                                continue;
                        }
                        ParamPoint fc{};
                        for (int v : f.vertices)
                                for (int i = 0; i < 3; ++i)
                                        fc[i] += vertices[v][i] / n;
                        for (std::size_t i = 0; i < n; ++i)
                                out.push_back({c, fc, vertices[f.vertices[i]], vertices[f.vertices[(i + 1) % n]]});
                }
        }
        return out;
}

Polytope clip_cube(int k, double r, const std::vector<ParamHalfSpace>& hs)
{
        switch (k) {
        case 1:
                return clip_interval(r, hs);
        case 2:
                return clip_polygon(r, hs);
        case 3:
                return clip_polyhedron(r, hs);
        default:
                throw std::invalid_argument("clip_cube: dimension must be 1, 2 or 3");
        }
}

} // namespace rdel
