#include "rdel/delaunay.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace rdel;

namespace {

void check_empty_spheres(const DelaunayTriangulation& t)
{
        for (const Simplex& c : t.cells) {
                std::vector<Point> v;
                for (int i : c)
                        v.push_back(t.landmarks[i]);
                Circumsphere cs = circumcenter(v);
                CHECK(is_delaunay_simplex(t.landmarks, c, Ball{cs.center, cs.radius}));
        }
}

} // namespace

TEST_CASE("random Delaunay triangulations have empty circumspheres and triangulate a ball")
{
        std::mt19937_64 rng(3);
        for (int d : {2, 3, 4}) {
                for (int trial = 0; trial < 4; ++trial) {
                        auto pts = oracle::box_points(rng, 12 + 8 * d, d);
                        DelaunayTriangulation t = build_delaunay(pts, trial);
                        CHECK(t.dim == d);
                        check_empty_spheres(t);
                        SimplicialComplex k = t.complex();
                        CHECK(euler_characteristic(k) == 1);
                        CHECK(k.count(0) == pts.size());
                }
        }
}

TEST_CASE("cocircular grid input still yields a valid triangulation")
{
        std::vector<Point> grid;
        for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j)
                        grid.push_back(Point{double(i), double(j)});
        DelaunayTriangulation t = build_delaunay(grid, 1);
        CHECK(t.cells.size() == 32);
        check_empty_spheres(t);
        CHECK(euler_characteristic(t.complex()) == 1);
}

TEST_CASE("the triangulation does not depend on the insertion order")
{
        std::mt19937_64 rng(8);
        auto pts = oracle::box_points(rng, 40, 3);
        auto a = build_delaunay(pts, 1).complex(), b = build_delaunay(pts, 99).complex();
        CHECK(complex_diff(a, b).empty());
}

TEST_CASE("Voronoi faces")
{
        std::vector<Point> pts{{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 5}};
        DelaunayTriangulation t = build_delaunay(pts, 0);
        Box box{Point{-10, -10}, Point{10, 10}};
        REQUIRE(t.contains({0, 1}));
        VoronoiFace f = voronoi_face(t, {0, 1}, box);
        CHECK_FALSE(f.empty);
        CHECK(f.dim == 1);
        for (const Point& v : f.vertices) {
                CHECK(v[0] == doctest::Approx(1.0));
                CHECK(dist(v, pts[0]) <= dist(v, pts[2]) + 1e-12);
        }
        VoronoiFace g = local_voronoi_face(pts, {0, 1}, box);
        CHECK(g.vertices.size() == f.vertices.size());
        CHECK_FALSE(f.bounded); // the bisector of 0 and 1 runs down to the box

        CHECK_FALSE(t.contains({0, 4}));
        CHECK_THROWS(voronoi_face(t, {0, 4}, box));
        CHECK(local_voronoi_face(pts, {0, 4}, box).empty);

        // clearance of the empty circle through the square corners
        CHECK(ball_clearance(pts, {0, 1, 2}, Ball{Point{1, 1}, std::sqrt(2.0)}) == doctest::Approx(0.0).epsilon(1e-12));
}
