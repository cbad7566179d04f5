#include "rdel/restricted.hpp"
#include "rdel/sampling.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace rdel;

TEST_CASE("restricted Delaunay of random plane points matches the brute-force circle nerve")
{
        ImplicitManifold circle = ImplicitManifold::sphere(Point{0, 0}, 1.0);
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 10; ++trial) {
                auto pts = oracle::annulus_points(rng, 3 + 3 * trial, 1.0, 1.0);
                RestrictedComplex rc = build_restricted(build_delaunay(pts, trial), circle);
                CHECK(rc.ambiguous.empty());
                CHECK(oracle::all_simplices(rc.complex) == oracle::circle_nerve(pts));
        }
}

TEST_CASE("dense samples of the sphere recover a closed surface with checked evidence")
{
        ImplicitManifold s = ImplicitManifold::sphere(Point{0, 0, 0}, 1.0);
        Cloud cloud = background_cloud(s, 0.05, 1);
        LandmarkSet L = farthest_point_sample(s, {}, 0.15, cloud);
        RestrictedComplex rc = build_restricted(build_delaunay(L.points, 1), s);
        CHECK(rc.ambiguous.empty());
        CHECK(is_closed_pseudomanifold(rc.complex, 2).closed);
        CHECK(euler_characteristic(rc.complex) == 2);
        int checked = 0;
        for (const auto& [sigma, e] : rc.evidence) {
                if (checked++ > 200)
                        break;
                std::string why;
                CHECK_MESSAGE(verify_evidence(L.points, sigma, s, e, &why), why);
        }
}

TEST_CASE("dual segment crossings and membership certificates")
{
        ImplicitManifold circle = ImplicitManifold::sphere(Point{0, 0}, 1.0);
        std::vector<Point> L{{1.0, 0.1}, {1.0, -0.1}};
        VoronoiFace f = local_voronoi_face(L, {0, 1}, manifold_box(circle));
        IntersectionResult r = face_surface_intersections(f, circle);
        CHECK_FALSE(r.ambiguous);
        REQUIRE(r.points.size() == 2);
        for (const Point& p : r.points) {
                CHECK(std::fabs(p[1]) < 1e-12);
                CHECK(std::fabs(std::fabs(p[0]) - 1) < 1e-9);
        }
        IntersectionOptions first;
        first.first_only = true;
        CHECK(face_surface_intersections(f, circle, first).points.size() == 1);

        MembershipCertificate mc = restricted_membership_certificate(L, {0, 1}, circle, Point{0.9999, 0.0});
        CHECK(mc.holds());
        CHECK(std::fabs(circle.field(mc.evidence.point)) < tol.on_surface);
        CHECK(mc.evidence.margin > 0);

        // a third landmark right on the crossing blocks the edge there
        std::vector<Point> blocked{{1.0, 0.1}, {1.0, -0.1}, {1.0, 0.0}};
        MembershipCertificate nb = restricted_membership_certificate(blocked, {0, 1}, circle, Point{1.0, 0.0});
        CHECK_FALSE(nb.holds());
        CHECK(to_string(CertificateStatus::Certified) != to_string(CertificateStatus::Absent));
}
