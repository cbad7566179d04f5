#include "rdel/manifold.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <random>

namespace rdel {

double bump_profile(double h, double rho, double r)
{
        if (r >= rho)
                return 0.0;
        const double a = 2.0 * h / (rho * rho);
        if (r <= 0.5 * rho)
                return h - a * r * r;
        const double s = rho - r;
        return a * s * s;
}

double bump_profile_slope(double h, double rho, double r)
{
        if (r >= rho)
                return 0.0;
        const double a = 2.0 * h / (rho * rho);
        if (r <= 0.5 * rho)
                return -2.0 * a * r;
        return -2.0 * a * (rho - r);
}

double bump_support_for(double h, double curvature_radius)
{
        return 2.04 * std::sqrt(std::fabs(h) * curvature_radius);
}

// ---------------------------------------------------------------- Bump

namespace {

struct Tangential {
        double along;
        double r;
        Point tan;
};

Tangential split(const Point& x, const Lobe& l, const Point& axis)
{
        Point y = x - l.center;
        double along = dot(y, axis);
        Point tan = y - axis * along;
        return {along, norm(tan), tan};
}

} // namespace

double Bump::displacement(const Point& x) const
{
        double best = 0.0;
        bool any = false;
        for (const Lobe& l : lobes) {
                Tangential t = split(x, l, axis);
                if (t.along < -gate || t.r >= l.support)
                        continue;
                double g = bump_profile(l.apex, l.support, t.r);
                if (!any || g > best) {
                        best = g;
                        any = true;
                }
        }
        return any ? scale * best : 0.0;
}

Point Bump::displacement_gradient(const Point& x) const
{
        double best = 0.0;
        const Lobe* arg = nullptr;
        Tangential targ{};
        for (const Lobe& l : lobes) {
                Tangential t = split(x, l, axis);
                if (t.along < -gate || t.r >= l.support)
                        continue;
                double g = bump_profile(l.apex, l.support, t.r);
                if (!arg || g > best) {
                        best = g;
                        arg = &l;
                        targ = t;
                }
        }
        Point grad(x.dim());
        if (!arg || targ.r == 0.0)
                return grad;
        return targ.tan * (scale * bump_profile_slope(arg->apex, arg->support, targ.r) / targ.r);
}

double Bump::max_slope() const
{
        double s = 0.0;
        for (const Lobe& l : lobes)
                s = std::max(s, 2.0 * std::fabs(l.apex) / l.support);
        return std::fabs(scale) * s;
}

double Bump::max_apex() const
{
        double s = 0.0;
        for (const Lobe& l : lobes)
                s = std::max(s, std::fabs(l.apex));
        return std::fabs(scale) * s;
}

double Bump::support_radius() const
{
        double s = 0.0;
        for (const Lobe& l : lobes)
                s = std::max(s, l.support);
        return s;
}

double Bump::curvature_radius() const
{
        double r = std::numeric_limits<double>::infinity();
        for (const Lobe& l : lobes)
                if (l.apex != 0.0)
                        r = std::min(r, l.support * l.support / (4.0 * std::fabs(l.apex * scale)));
        return r;
}

// ---------------------------------------------------------------- ImplicitManifold

ImplicitManifold ImplicitManifold::hypercube(int d, double delta)
{
        if (d < 2 || d > 5 || !(delta > 0.0))
                throw GeometryError("hypercube: need 2 <= d <= 5 and delta > 0");
        ImplicitManifold m;
        m.base_.kind = BaseKind::Hypercube;
        m.base_.d = d;
        m.base_.delta = delta;
        m.base_.center = Point(d);
        return m;
}

ImplicitManifold ImplicitManifold::sphere(const Point& center, double radius)
{
        if (!(radius > 0.0))
                throw GeometryError("sphere: radius must be positive");
        ImplicitManifold m;
        m.base_.kind = BaseKind::Sphere;
        m.base_.d = center.dim();
        m.base_.center = center;
        m.base_.radius = radius;
        return m;
}

ImplicitManifold ImplicitManifold::torus(double major, double minor)
{
        if (!(minor > 0.0) || !(major > minor))
                throw GeometryError("torus: need major > minor > 0");
        ImplicitManifold m;
        m.base_.kind = BaseKind::Torus;
        m.base_.d = 3;
        m.base_.center = Point(3);
        m.base_.major = major;
        m.base_.minor = minor;
        return m;
}

double ImplicitManifold::base_field(const Point& x) const
{
        switch (base_.kind) {
        case BaseKind::Hypercube: {
                const double a = 0.5 * base_.delta;
                double s = 0.0;
                for (int i = 0; i < x.dim(); ++i) {
                        double q = std::fabs(x[i]) - a;
                        if (q > 0.0)
                                s += q * q;
                }
                return s > 0.0 ? std::sqrt(s) - a : -a;
        }
        case BaseKind::Sphere:
                return dist(x, base_.center) - base_.radius;
        case BaseKind::Torus: {
                double q = std::hypot(x[0], x[1]) - base_.major;
                return std::hypot(q, x[2]) - base_.minor;
        }
        }
        return 0.0;
}

Point ImplicitManifold::base_gradient(const Point& x) const
{
        Point g(x.dim());
        switch (base_.kind) {
        case BaseKind::Hypercube: {
                const double a = 0.5 * base_.delta;
                double s = 0.0;
                for (int i = 0; i < x.dim(); ++i) {
                        double q = std::fabs(x[i]) - a;
                        if (q > 0.0) {
                                g[i] = x[i] > 0 ? q : -q;
                                s += q * q;
                        }
                }
                if (s > 0.0)
                        g *= 1.0 / std::sqrt(s);
                return g;
        }
        case BaseKind::Sphere: {
                Point v = x - base_.center;
                double n = norm(v);
                return n > 0.0 ? v * (1.0 / n) : g;
        }
        case BaseKind::Torus: {
                double rho = std::hypot(x[0], x[1]);
                if (rho == 0.0)
                        return g;
                double q = rho - base_.major;
                double n = std::hypot(q, x[2]);
                if (n == 0.0)
                        return g;
                g[0] = q / n * x[0] / rho;
                g[1] = q / n * x[1] / rho;
                g[2] = x[2] / n;
                return g;
        }
        }
        return g;
}

Point ImplicitManifold::base_project(const Point& x) const
{
        switch (base_.kind) {
        case BaseKind::Hypercube: {
                const double a = 0.5 * base_.delta;
                Point c = x;
                for (int i = 0; i < x.dim(); ++i)
                        c[i] = std::clamp(x[i], -a, a);
                Point v = x - c;
                double n = norm(v);
                if (n <= 1e-12 * a)
                        throw GeometryError("project: point too deep inside the hypercube");
                return c + v * (a / n);
        }
        case BaseKind::Sphere: {
                Point v = x - base_.center;
                double n = norm(v);
                if (n == 0.0)
                        throw GeometryError("project: point at the sphere center");
                return base_.center + v * (base_.radius / n);
        }
        case BaseKind::Torus: {
                double rho = std::hypot(x[0], x[1]);
                if (rho == 0.0)
                        throw GeometryError("project: point on the torus axis");
                Point core{base_.major * x[0] / rho, base_.major * x[1] / rho, 0.0};
                Point v = x - core;
                double n = norm(v);
                if (n == 0.0)
                        throw GeometryError("project: point on the torus core circle");
                return core + v * (base_.minor / n);
        }
        }
        return x;
}

double ImplicitManifold::field(const Point& x) const
{
        double f = base_field(x);
        for (const Bump& b : bumps_)
                f -= b.displacement(x);
        return f;
}

Point ImplicitManifold::gradient(const Point& x) const
{
        Point g = base_gradient(x);
        for (const Bump& b : bumps_)
                g -= b.displacement_gradient(x);
        return g;
}

double ImplicitManifold::lipschitz() const
{
        double l = 1.0;
        for (const Bump& b : bumps_)
                l += b.max_slope();
        return l;
}

double ImplicitManifold::jump() const
{
        double j = 0.0;
        for (const Bump& b : bumps_)
                j += b.max_apex();
        return j;
}

double ImplicitManifold::base_reach() const
{
        switch (base_.kind) {
        case BaseKind::Hypercube:
                return 0.5 * base_.delta;
        case BaseKind::Sphere:
                return base_.radius;
        case BaseKind::Torus:
                return std::min(base_.minor, base_.major - base_.minor);
        }
        return 0.0;
}

double ImplicitManifold::extent() const
{
        switch (base_.kind) {
        case BaseKind::Hypercube: {
                double e = base_.delta;
                for (const Bump& b : bumps_)
                        e = std::max(e, base_.delta + b.max_apex());
                return e;
        }
        case BaseKind::Sphere: {
                double m = 0.0;
                for (int i = 0; i < base_.center.dim(); ++i)
                        m = std::max(m, std::fabs(base_.center[i]));
                return m + base_.radius;
        }
        case BaseKind::Torus:
                return base_.major + base_.minor;
        }
        return 0.0;
}

namespace {

bool near_bumps(const std::vector<Bump>& bumps, const Point& x, double slack)
{
        for (const Bump& b : bumps)
                for (const Lobe& l : b.lobes) {
                        Tangential t = split(x, l, b.axis);
                        if (t.r < l.support + slack && t.along >= -b.gate - slack)
                                return true;
                }
        return false;
}

} // namespace

Point ImplicitManifold::project(const Point& x) const
{
        if (base_.kind == BaseKind::Hypercube && base_field(x) <= -0.5 * base_.delta * (1.0 - 1e-9))
                throw GeometryError("project: point too deep inside");
        Point y = base_project(x);
        const double slack = dist(x, y) + 1e-9;
        if (bumps_.empty() || (!near_bumps(bumps_, x, slack) && !near_bumps(bumps_, y, slack)))
                return y;
        // closest point: y = x - lambda n(y) with field(y) = 0
        const double scale = std::max(1.0, extent());
        for (int outer = 0; outer < 60; ++outer) {
                Point n = normal(y);
                double lambda = dot(x - y, n);
                for (int it = 0; it < 60; ++it) {
                        Point z = x - n * lambda;
                        double f = field(z);
                        double dfdl = -dot(gradient(z), n);
                        if (std::fabs(f) <= 1e-15 * scale || dfdl == 0.0)
                                break;
                        lambda -= f / dfdl;
                }
                Point yn = x - n * lambda;
                double moved = dist(yn, y);
                y = yn;
                if (moved <= 1e-15 * scale)
                        break;
        }
        for (int it = 0; it < 5; ++it) {
                Point g = gradient(y);
                double gg = norm2(g);
                double f = field(y);
                if (gg == 0.0 || std::fabs(f) <= 1e-15 * scale)
                        break;
                y -= g * (f / gg);
        }
        return y;
}

// ---------------------------------------------------------------- deformations

namespace {

struct FacetFrame {
        int axis_index;
        Point axis;
};

FacetFrame facet_of(const ImplicitManifold& m, const Point& x)
{
        if (m.base().kind != BaseKind::Hypercube)
                throw GeometryError("bumps are only supported on the hypercube base");
        const double a = 0.5 * m.base().delta;
        int best = 0;
        for (int i = 1; i < x.dim(); ++i)
                if (std::fabs(x[i]) > std::fabs(x[best]))
                        best = i;
        for (int i = 0; i < x.dim(); ++i)
                if (i != best && std::fabs(x[i]) > a)
                        throw GeometryError("bump center is not above a flat facet region");
        Point axis = Point::unit(x.dim(), best) * (x[best] >= 0 ? 1.0 : -1.0);
        return {best, axis};
}

void check_placement(const ImplicitManifold& m, const Bump& nb, const BumpOptions& opt)
{
        const double a = 0.5 * m.base().delta;
        for (const Lobe& l : nb.lobes)
                for (int i = 0; i < l.center.dim(); ++i)
                        if (nb.axis[i] == 0.0 && std::fabs(l.center[i]) + l.support > a)
                                throw GeometryError("bump support leaves the flat facet");
        for (const Point& k : opt.keep_fixed)
                for (const Lobe& l : nb.lobes) {
                        Tangential t = split(k, l, nb.axis);
                        if (t.r < l.support && t.along >= -nb.gate)
                                throw GeometryError("bump support overlaps a forbidden region: " + to_string(k));
                }
        if (opt.disjoint_from_existing)
                for (const Bump& b : m.bumps())
                        for (const Lobe& l : b.lobes)
                                for (const Lobe& o : nb.lobes)
                                        if (dot(b.axis, nb.axis) > 0.5 &&
                                            split(o.center, l, b.axis).r < l.support + o.support)
                                                throw GeometryError("bump support overlaps bump '" + b.name + "'");
}

} // namespace

ImplicitManifold add_bump(const ImplicitManifold& m, const Point& center_on_base, double apex, const BumpOptions& opt)
{
        if (apex == 0.0)
                return m;
        if (std::fabs(m.base_field(center_on_base)) > 1e-9 * std::max(1.0, m.base().delta))
                throw GeometryError("add_bump: center is not on the base surface");
        FacetFrame ff = facet_of(m, center_on_base);
        const double curvature = m.base_reach();
        double rho = bump_support_for(apex, curvature);
        Bump b;
        b.name = opt.name;
        b.axis = ff.axis;
        b.gate = 0.5 * m.base().delta;
        b.scale = opt.scale;
        if (opt.max_support > 0.0 && rho > opt.max_support) {
                rho = opt.max_support;
                b.capped = true;
        }
        b.lobes.push_back({center_on_base, apex, rho});
        check_placement(m, b, opt);
        ImplicitManifold out = m;
        out.bumps_mut().push_back(b);
        return out;
}

ImplicitManifold add_ridge_bump(const ImplicitManifold& m, const Point& t1, const Point& t2, const BumpOptions& opt)
{
        FacetFrame ff = facet_of(m, t1);
        const double delta = m.base().delta;
        auto drop = [&](const Point& t, double& h) {
                Point b = t;
                b[ff.axis_index] = ff.axis[ff.axis_index] * delta;
                h = dot(t - b, ff.axis);
                return b;
        };
        double h1, h2;
        Point b1 = drop(t1, h1), b2 = drop(t2, h2);
        if (!(h1 > 0.0) || !(h2 > 0.0))
                throw GeometryError("add_ridge_bump: targets must lie above the base");
        const double sep = dist(b1, b2);
        if (sep <= 1e-12) {
                return add_bump(m, b1, std::max(h1, h2), opt);
        }
        const double curvature = m.base_reach();
        Bump b;
        b.name = opt.name;
        b.axis = ff.axis;
        b.gate = 0.5 * delta;
        b.scale = opt.scale;
        double r1 = bump_support_for(h1, curvature), r2 = bump_support_for(h2, curvature);
        if (opt.max_support > 0.0) {
                if (r1 > opt.max_support || r2 > opt.max_support)
                        b.capped = true;
                r1 = std::min(r1, opt.max_support);
                r2 = std::min(r2, opt.max_support);
        }
        const double tol = 1e-12 * std::max(h1, h2);
        if (bump_profile(h2, r2, sep) > h1 + tol || bump_profile(h1, r1, sep) > h2 + tol)
                throw GeometryError("add_ridge_bump: targets too far apart for a curvature-respecting ridge");
        b.lobes.push_back({b1, h1, r1});
        b.lobes.push_back({b2, h2, r2});
        check_placement(m, b, opt);
        ImplicitManifold out = m;
        out.bumps_mut().push_back(b);
        return out;
}

ImplicitManifold set_deflation(const ImplicitManifold& m, int bump_id, double factor)
{
        if (bump_id < 0 || bump_id >= static_cast<int>(m.bumps().size()))
                throw GeometryError("set_deflation: no such bump");
        if (!(factor > 0.0) || factor > 1.0)
                throw GeometryError("set_deflation: factor out of range (0, 1]");
        ImplicitManifold out = m;
        out.bumps_mut()[bump_id].scale *= factor;
        return out;
}

int find_bump(const ImplicitManifold& m, const std::string& name)
{
        for (std::size_t i = 0; i < m.bumps().size(); ++i)
                if (m.bumps()[i].name == name)
                        return static_cast<int>(i);
        return -1;
}

// ---------------------------------------------------------------- reach

ReachEstimate estimate_reach(const ImplicitManifold& m, int probe_count, unsigned long long seed)
{
        if (probe_count < 1000)
                throw GeometryError("estimate_reach: probe_count must be >= 1000");
        const int d = m.dim();
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::vector<Point> probes;
        const int per_bump = m.bumps().empty() ? 0 : probe_count / (2 * static_cast<int>(m.bumps().size()));
        for (const Bump& b : m.bumps()) {
                const Lobe& l = b.lobes[0];
                Point lo = l.center;
                for (const Lobe& o : b.lobes)
                        if (o.support > l.support)
                                lo = o.center;
                for (int i = 0; i < per_bump; ++i) {
                        Point x = lo + b.axis * (0.5 * b.support_radius());
                        for (int j = 0; j < d; ++j)
                                if (b.axis[j] == 0.0)
                                        x[j] += 1.2 * b.support_radius() * unif(rng);
                        probes.push_back(m.project(x));
                }
        }
        while (static_cast<int>(probes.size()) < probe_count) {
                Point u(d);
                for (int j = 0; j < d; ++j)
                        u[j] = gauss(rng);
                double inf = 0.0;
                for (int j = 0; j < d; ++j)
                        inf = std::max(inf, std::fabs(u[j]));
                if (inf == 0.0)
                        continue;
                Point x;
                if (m.base().kind == BaseKind::Torus) {
                        double ang = M_PI * unif(rng), phi = M_PI * unif(rng);
                        x = Point{std::cos(ang) * (m.base().major + 1.5 * std::cos(phi) * m.base().minor),
                                  std::sin(ang) * (m.base().major + 1.5 * std::cos(phi) * m.base().minor),
                                  1.5 * m.base().minor * std::sin(phi)};
                } else {
                        x = m.base().center + u * (1.5 * m.extent() / inf);
                }
                probes.push_back(m.project(x));
        }
        std::vector<Point> normals;
        for (const Point& p : probes)
                normals.push_back(m.normal(p));
        double sampled = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < probes.size(); ++j)
                for (std::size_t i = 0; i < probes.size(); ++i) {
                        if (i == j)
                                continue;
                        Point v = probes[i] - probes[j];
                        double den = 2.0 * std::fabs(dot(v, normals[j]));
                        if (den == 0.0)
                                continue;
                        sampled = std::min(sampled, norm2(v) / den);
                }
        ReachEstimate r;
        r.analytic = m.base_reach();
        for (const Bump& b : m.bumps())
                r.analytic = std::min(r.analytic, b.curvature_radius());
        r.sampled = sampled;
        if (sampled >= r.analytic * (1.0 - 1e-6)) {
                r.value = r.analytic;
                r.method = "analytic (sampled Federer ratio consistent)";
        } else {
                r.value = sampled;
                r.method = "sampled Federer ratio";
        }
        return r;
}

double max_bump_curvature(const ImplicitManifold& m, int bump_id, int grid)
{
        const Bump& b = m.bumps().at(bump_id);
        const int d = m.dim();
        std::vector<Point> tangents;
        for (int j = 0; j < d; ++j)
                if (b.axis[j] == 0.0)
                        tangents.push_back(Point::unit(d, j));
        Point center(d);
        for (const Lobe& l : b.lobes)
                center += l.center * (1.0 / b.lobes.size());
        const double extent = 1.05 * (b.support_radius() + dist(center, b.lobes[0].center));
        const double hs = 1e-3 * b.support_radius();
        const int k = static_cast<int>(tangents.size());
        auto height = [&](const Point& p) { return b.displacement(p); };
        double worst = 0.0;
        for (int i = 0; i < grid; ++i)
                for (int j = 0; j < grid; ++j) {
                        Point p = center + tangents[0] * (extent * (2.0 * i / (grid - 1) - 1.0)) +
                                  tangents[std::min(1, k - 1)] * (extent * (2.0 * j / (grid - 1) - 1.0));
                        Eigen::MatrixXd hess(k, k);
                        Eigen::VectorXd grad(k);
                        const double h0 = height(p);
                        for (int a = 0; a < k; ++a) {
                                Point ea = tangents[a] * hs;
                                grad(a) = (height(p + ea) - height(p - ea)) / (2 * hs);
                                for (int c = a; c < k; ++c) {
                                        Point ec = tangents[c] * hs;
                                        double v;
                                        if (a == c)
                                                v = (height(p + ea) - 2 * h0 + height(p - ea)) / (hs * hs);
                                        else
                                                v = (height(p + ea + ec) - height(p + ea - ec) - height(p - ea + ec) +
                                                     height(p - ea - ec)) /
                                                    (4 * hs * hs);
                                        hess(a, c) = hess(c, a) = v;
                                }
                        }
                        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
                        double ev = es.eigenvalues().cwiseAbs().maxCoeff();
                        worst = std::max(worst, ev / std::sqrt(1.0 + grad.squaredNorm()));
                }
        return worst;
}

} // namespace rdel
