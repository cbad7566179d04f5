#include "rdel/manifold.hpp"

#include <doctest.h>

#include <cmath>

using namespace rdel;

TEST_CASE("bump profile is C1 and vanishes at the support radius")
{
        const double h = 0.01, rho = 0.8;
        CHECK(bump_profile(h, rho, 0) == doctest::Approx(h));
        CHECK(bump_profile(h, rho, rho) == doctest::Approx(0).epsilon(1e-15));
        CHECK(bump_profile(h, rho, 2 * rho) == 0);
        const double e = 1e-9;
        CHECK(bump_profile(h, rho, rho / 2 - e) == doctest::Approx(bump_profile(h, rho, rho / 2 + e)));
        CHECK(bump_profile_slope(h, rho, rho / 2 - e) == doctest::Approx(bump_profile_slope(h, rho, rho / 2 + e)));
        CHECK(bump_profile_slope(h, rho, rho) == doctest::Approx(0).epsilon(1e-15));
        // curvature rule: second derivative 4h/rho^2 stays below 1/R
        const double R = 3.0, r = bump_support_for(h, R);
        CHECK(4 * h / (r * r) <= 1 / R);
}

TEST_CASE("base shapes")
{
        ImplicitManifold s = ImplicitManifold::sphere(Point{0, 0, 0}, 2.0);
        CHECK(s.field(Point{2, 0, 0}) == doctest::Approx(0).epsilon(1e-15));
        CHECK(s.field(Point{0, 0, 0}) < 0);
        Point pr = s.project(Point{1, 1, 1});
        CHECK(norm(pr) == doctest::Approx(2.0));
        CHECK(s.base_reach() == doctest::Approx(2.0));

        ImplicitManifold t = ImplicitManifold::torus(3.0, 1.0);
        CHECK(t.field(Point{4, 0, 0}) == doctest::Approx(0).epsilon(1e-15));
        CHECK(t.field(Point{3, 0, 1}) == doctest::Approx(0).epsilon(1e-15));
        CHECK(t.base_reach() == doctest::Approx(1.0));

        const double D = 20.0 / 3;
        ImplicitManifold c = ImplicitManifold::hypercube(4, D);
        CHECK(c.field(Point{0.5, 0.5, 0, D}) == doctest::Approx(0).epsilon(1e-15));
        CHECK(c.field(Point{0, 0, 0, 0}) < 0);
        CHECK(c.base_reach() == doctest::Approx(D / 2));
        // the rounded corner is a sphere of radius D/2 around the cube corner
        const double k = D / 2 + D / 2 / std::sqrt(4.0);
        CHECK(c.field(Point{k, k, k, k}) == doctest::Approx(0).epsilon(1e-12));
        Point g = c.gradient(Point{0.1, 0.2, 0.3, D + 0.1});
        CHECK(g[3] == doctest::Approx(1.0));
}

TEST_CASE("bumps raise the surface and respect the curvature bound")
{
        const double D = 20.0 / 3, target = D / 2, h = 0.002;
        ImplicitManifold m = ImplicitManifold::hypercube(4, D);
        BumpOptions opt;
        opt.name = "b";
        ImplicitManifold b = add_bump(m, Point{0.5, 0.5, 0, D}, h, opt);
        const int id = find_bump(b, "b");
        REQUIRE(id >= 0);
        CHECK(b.field(Point{0.5, 0.5, 0, D + h}) == doctest::Approx(0).epsilon(1e-12));
        CHECK(b.bumps()[id].curvature_radius() >= target * (1 - 1e-9));
        CHECK(max_bump_curvature(b, id, 40) <= 1 / target * (1 + 1e-3));
        const double rho = b.bumps()[id].support_radius();
        CHECK(b.field(Point{0.5 + 1.01 * rho, 0.5, 0, D}) == doctest::Approx(0).epsilon(1e-15));

        ImplicitManifold half = set_deflation(b, id, 0.5);
        CHECK(half.bumps()[id].max_apex() == doctest::Approx(h / 2));
        CHECK_THROWS(set_deflation(b, id, 1.5));
        CHECK(find_bump(b, "missing") < 0);

        // projection lands on the bumped surface
        Point p = b.project(Point{0.55, 0.5, 0.01, D + 0.3});
        CHECK(std::fabs(b.field(p)) < tol.on_surface);

        // a second bump on the same spot collides with the first support
        BumpOptions other;
        other.name = "c";
        CHECK_THROWS(add_bump(b, Point{0.5, 0.5, 0, D}, h, other));
}

TEST_CASE("reach estimates")
{
        ImplicitManifold s = ImplicitManifold::sphere(Point{0, 0, 0}, 1.0);
        ReachEstimate r = estimate_reach(s, 2000, 1);
        CHECK(r.value <= 1.0 + 1e-9);
        CHECK(r.value >= 0.9);
        CHECK_THROWS(estimate_reach(s, 10, 1));
}
