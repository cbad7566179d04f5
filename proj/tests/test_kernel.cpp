#include "rdel/kernel.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace rdel;

TEST_CASE("orientation and in_sphere are exact on degenerate input")
{
        std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}};
        CHECK(orientation(tri) == 1);
        std::swap(tri[1], tri[2]);
        CHECK(orientation(tri) == -1);
        std::vector<Point> line{{0, 0}, {1, 1}, {3, 3}};
        CHECK(orientation(line) == 0);

        std::vector<Point> circ{{1, 0}, {0, 1}, {-1, 0}};
        CHECK(in_sphere(circ, Point{0, 0}) == -1);
        CHECK(in_sphere(circ, Point{2, 0}) == 1);
        CHECK(in_sphere(circ, Point{0, -1}) == 0);
        // cocircular after a rounding-sensitive shift
        const double s = 0.1;
        std::vector<Point> shifted{{1 + s, s}, {s, 1 + s}, {-1 + s, s}};
        CHECK(in_sphere(shifted, Point{s, -1 + s}) == 0);
}

TEST_CASE("compare_distance detects exact ties")
{
        CHECK(compare_distance(Point{0, 0}, Point{1, 0}, Point{0, 1}) == 0);
        CHECK(compare_distance(Point{0, 0}, Point{1, 0}, Point{0, 2}) == -1);
        CHECK(compare_distance(Point{0.1, 0.2, 0.3}, Point{0.3, 0.2, 0.1}, Point{0.1, 0.2, 0.3}) == 1);
}

TEST_CASE("circumcenter lies in the affine hull")
{
        std::vector<Point> tri{{0, 0, 5}, {2, 0, 5}, {0, 2, 5}};
        Circumsphere cs = circumcenter(tri);
        CHECK(cs.center[0] == doctest::Approx(1).epsilon(1e-14));
        CHECK(cs.center[1] == doctest::Approx(1).epsilon(1e-14));
        CHECK(cs.center[2] == doctest::Approx(5).epsilon(1e-14));
        CHECK(cs.radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(cs.residual < 1e-14);

        std::vector<Point> simplex{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}};
        Circumsphere full = circumcenter(simplex);
        for (int i = 0; i < 4; ++i)
                CHECK(full.center[i] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("flats and angles")
{
        AffineFlat f = make_flat(Point{0, 0, 1}, {Point{1, 1, 0}, Point{1, -1, 0}});
        CHECK(f.dim() == 2);
        CHECK(f.distance(Point{3, 4, 6}) == doctest::Approx(5));
        CHECK(std::fabs(dot(f.directions[0], f.directions[1])) < tol.orthonormal);
        CHECK_THROWS_AS(make_flat(Point{0, 0}, {Point{1, 1}, Point{2, 2}}), GeometryError);

        auto same = principal_angles({Point{1, 0, 0}, Point{0, 1, 0}}, {Point{1, 1, 0}, Point{1, -1, 0}});
        CHECK(same.size() == 2);
        CHECK(same[1] < 1e-7);
        auto orth = principal_angles({Point{1, 0, 0}}, {Point{0, 0, 1}});
        CHECK(orth[0] == doctest::Approx(std::numbers::pi / 2));
        CHECK(angle_with_direction(f, Point{0, 0, 1}) == doctest::Approx(std::numbers::pi / 2));

        auto comp = orthogonal_complement({Point{1, 0, 0, 0}, Point{0, 1, 0, 0}}, 4);
        REQUIRE(comp.size() == 2);
        for (const Point& c : comp)
                CHECK(std::fabs(c[0]) + std::fabs(c[1]) < 1e-14);
}

TEST_CASE("point arithmetic")
{
        Point a{1, 2, 3}, b{4, 6, 3};
        CHECK(dist(a, b) == doctest::Approx(5));
        CHECK((a + b)[2] == 6);
        CHECK(norm(normalized(b - a)) == doctest::Approx(1));
        CHECK(a == Point{1, 2, 3});
}
