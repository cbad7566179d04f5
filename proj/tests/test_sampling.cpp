#include "rdel/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace rdel;

TEST_CASE("background clouds are deterministic and lie on M")
{
        ImplicitManifold s = ImplicitManifold::sphere(Point{0, 0, 0}, 1.0);
        Cloud a = background_cloud(s, 0.05, 3), b = background_cloud(s, 0.05, 3);
        CHECK(a.checksum == b.checksum);
        CHECK(a.points.size() > 1000);
        for (std::size_t i = 0; i < a.points.size(); i += 97)
                CHECK(std::fabs(s.field(a.points[i])) < tol.on_surface);
        CHECK(checksum(a.points) == a.checksum);
}

TEST_CASE("farthest-point sampling meets its sparsity and covering bounds")
{
        ImplicitManifold t = ImplicitManifold::torus(3.0, 1.0);
        const double eps = 0.2;
        Cloud cloud = background_cloud(t, eps / 4, 1);
        LandmarkSet L = farthest_point_sample(t, {}, eps, cloud);
        CHECK(L.sparsity > 2 * eps * (1 - 1e-12));
        CHECK(L.density <= 2 * eps);
        CHECK(L.cloud_checksum == cloud.checksum);
        CHECK(min_pairwise_distance(L.points) == doctest::Approx(L.sparsity));
        CHECK(covering_radius(L.points, cloud, 2 * eps) == doctest::Approx(L.density));

        LandmarkSet again = farthest_point_sample(t, {}, eps, cloud);
        CHECK(checksum(again.points) == checksum(L.points));
}

TEST_CASE("seeds come first and landmark edits keep names in sync")
{
        ImplicitManifold s = ImplicitManifold::sphere(Point{0, 0, 0}, 1.0);
        Cloud cloud = background_cloud(s, 0.1, 2);
        const Point n{0, 0, 1}, e{1, 0, 0};
        LandmarkSet L = farthest_point_sample(s, {n, e}, 0.3, cloud);
        CHECK(L.points[0] == n);
        CHECK(L.points[1] == e);
        CHECK_THROWS(farthest_point_sample(s, {n, Point{0, 0.01, std::sqrt(1 - 1e-4)}}, 0.3, cloud));
        CHECK_THROWS(farthest_point_sample(s, {}, 0.0, cloud));

        L.named["north"] = 0;
        LandmarkSet moved = substitute(L, 0, Point{0, 1, 0}, s, "top", &cloud);
        CHECK(moved["top"] == Point{0, 1, 0});
        CHECK_THROWS(substitute(L, 0, Point{0, 2, 0}, s));

        LandmarkSet more = insert_landmark(moved, Point{0, 0, -1}, s, "south");
        CHECK(more.points.size() == L.points.size() + 1);
        CHECK(more["south"] == Point{0, 0, -1});

        // the ball passes through the protected south pole and swallows a nearby landmark
        more = insert_landmark(more, normalized(Point{0.25, 0, -0.97}), s, "victim");
        const Ball b{Point{0.3, 0, -1}, 0.3};
        LandmarkSet cut = excise_ball(more, b, {more.index_of("south")}, &cloud);
        CHECK(cut["south"] == Point{0, 0, -1});
        CHECK(cut.points.size() < more.points.size());
        CHECK_FALSE(cut.named.count("victim"));
        for (const Point& x : cut.points)
                CHECK(dist(x, b.center) >= b.radius);
        // a protected landmark strictly inside would leave the ball non-empty
        CHECK_THROWS(excise_ball(more, Ball{Point{0, 0, -1}, 0.5}, {more.index_of("south")}));
        CHECK_FALSE(cut.history.empty());
}
