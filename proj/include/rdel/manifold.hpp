// Implicit hypersurfaces: smoothed hypercube (plus sphere/torus controls) with
// localized bump deformations.
#pragma once

#include "rdel/kernel.hpp"

#include <string>
#include <vector>

namespace rdel {

enum class BaseKind { Hypercube, Sphere, Torus };

struct BaseShape {
        BaseKind kind = BaseKind::Hypercube;
        int d = 4;
        double delta = 1.0; // hypercube: solid cube [-delta/2, delta/2]^d thickened by delta/2
        Point center;       // sphere
        double radius = 1.0;
        double major = 3.0; // torus (d = 3, axis z)
        double minor = 1.0;
};

// Radial profile: h - a r^2 on [0, rho/2], a (rho - r)^2 on [rho/2, rho], a = 2h/rho^2.
double bump_profile(double h, double rho, double r);
double bump_profile_slope(double h, double rho, double r);
// Support radius giving curvature radius >= target: rho = 2.04 sqrt(h * target).
double bump_support_for(double h, double curvature_radius);

struct Lobe {
        Point center; // tangential position on the base facet
        double apex = 0.0;
        double support = 0.0;
};

struct Bump {
        std::string name;
        std::vector<Lobe> lobes; // displacement is the max over lobes
        Point axis;              // outward facet normal
        double scale = 1.0;      // inflation (> 1) or deflation (< 1)
        double gate = 0.0;       // applied only where (x - center).axis >= -gate
        bool capped = false;     // support limited below the curvature rule

        double displacement(const Point& x) const;
        Point displacement_gradient(const Point& x) const;
        double max_slope() const;
        double max_apex() const;
        double support_radius() const;
        // Analytic lower bound on the curvature radius of the deformed patch.
        double curvature_radius() const;
};

class ImplicitManifold {
public:
        static ImplicitManifold hypercube(int d, double delta);
        static ImplicitManifold sphere(const Point& center, double radius);
        static ImplicitManifold torus(double major, double minor);

        int dim() const { return base_.d; }
        const BaseShape& base() const { return base_; }
        const std::vector<Bump>& bumps() const { return bumps_; }
        std::vector<Bump>& bumps_mut() { return bumps_; }

        double base_field(const Point& x) const;
        Point base_gradient(const Point& x) const;
        Point base_project(const Point& x) const;

        double field(const Point& x) const;
        Point gradient(const Point& x) const;
        Point normal(const Point& x) const { return normalized(gradient(x)); }
        Point project(const Point& x) const;

        // Global Lipschitz constant of field and jump allowance of bump gates.
        double lipschitz() const;
        double jump() const;
        double base_reach() const;
        // Bounding box half-width of M around the origin (or center).
        double extent() const;

private:
        BaseShape base_;
        std::vector<Bump> bumps_;
};

struct BumpOptions {
        std::string name;
        double max_support = 0.0;           // 0: no cap
        std::vector<Point> keep_fixed;      // must stay outside the support
        bool disjoint_from_existing = true; // supports may not overlap earlier bumps
        double scale = 1.0;
};

ImplicitManifold add_bump(const ImplicitManifold& m, const Point& center_on_base, double apex,
                          const BumpOptions& opt = {});
ImplicitManifold add_ridge_bump(const ImplicitManifold& m, const Point& t1, const Point& t2,
                                const BumpOptions& opt = {});
ImplicitManifold set_deflation(const ImplicitManifold& m, int bump_id, double factor);
int find_bump(const ImplicitManifold& m, const std::string& name);

struct ReachEstimate {
        double value = 0.0;    // reported lower bound
        double analytic = 0.0; // base reach combined with bump curvature bounds
        double sampled = 0.0;  // Federer ratio minimized over probe pairs
        std::string method;
};

ReachEstimate estimate_reach(const ImplicitManifold& m, int probe_count, unsigned long long seed = 1);

// Max |principal curvature| over a grid x grid patch through the bump center (finite differences).
double max_bump_curvature(const ImplicitManifold& m, int bump_id, int grid = 100);

} // namespace rdel
