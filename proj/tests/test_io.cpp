#include "rdel/io.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace rdel;
using io::json;

TEST_CASE("complex JSON follows the schema and round-trips")
{
        SimplicialComplex k({Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{1, 1}});
        k.insert({0, 1, 2});
        k.insert({1, 3});
        json j = io::complex_to_json(k);
        CHECK(j["dimension"] == 2);
        CHECK(j["vertices"].size() == 4);
        CHECK(j["simplices"]["1"].size() == 4);
        SimplicialComplex back = io::complex_from_json(json::parse(j.dump()));
        CHECK(io::complex_checksum(back) == io::complex_checksum(k));
        CHECK(complex_diff(back, k).empty());
        k.insert({2, 3});
        CHECK(io::complex_checksum(back) != io::complex_checksum(k));

        json bad = j;
        bad["dimension"] = 3;
        CHECK_THROWS(io::complex_from_json(bad));
}

TEST_CASE("restricted complexes keep their evidence table")
{
        ImplicitManifold circle = ImplicitManifold::sphere(Point{0, 0}, 1.0);
        std::mt19937_64 rng(2);
        auto pts = oracle::annulus_points(rng, 12, 1.0, 1.0);
        RestrictedComplex rc = build_restricted(build_delaunay(pts, 0), circle);
        json j = io::restricted_to_json(rc);
        CHECK(j["evidence"].size() == rc.evidence.size());
        RestrictedComplex back = io::restricted_from_json(json::parse(j.dump()));
        CHECK(io::complex_checksum(back.complex) == io::complex_checksum(rc.complex));
        for (const auto& [s, e] : rc.evidence) {
                REQUIRE(back.evidence.count(s));
                CHECK(back.evidence.at(s).point == e.point);
                CHECK(back.evidence.at(s).margin == e.margin);
        }
}

TEST_CASE("landmarks, witnesses and manifolds round-trip bit for bit")
{
        ImplicitManifold m = ImplicitManifold::hypercube(4, 20.0 / 3);
        BumpOptions o;
        o.name = "b";
        o.scale = 1.01;
        m = add_bump(m, Point{0.5, 0.5, 0, 20.0 / 3}, 0.001, o);
        ImplicitManifold back = io::manifold_from_json(json::parse(io::manifold_to_json(m).dump()));
        CHECK(io::manifold_to_json(back).dump() == io::manifold_to_json(m).dump());
        std::mt19937_64 rng(1);
        for (const Point& x : oracle::box_points(rng, 50, 4, 0, 7))
                CHECK(back.field(x) == m.field(x));

        ImplicitManifold s = ImplicitManifold::sphere(Point{0, 0, 0}, 1.0);
        Cloud cloud = background_cloud(s, 0.1, 1);
        LandmarkSet L = farthest_point_sample(s, {}, 0.3, cloud);
        L.named["first"] = 0;
        LandmarkSet L2 = io::landmarks_from_json(json::parse(io::landmarks_to_json(L).dump()));
        CHECK(checksum(L2.points) == checksum(L.points));
        CHECK(L2.index_of("first") == 0);
        CHECK(L2.cloud_checksum == cloud.checksum);
        json tampered = io::landmarks_to_json(L);
        tampered["points"][0][0] = 0.5;
        CHECK_THROWS(io::landmarks_from_json(tampered));

        WitnessSet w = witnesses_from_cloud(cloud);
        WitnessSet w2 = io::witnesses_from_json(json::parse(io::witnesses_to_json(w).dump()));
        CHECK(checksum(w2.points) == checksum(w.points));
        CHECK(w2.source == w.source);
        CHECK_THROWS(io::manifold_from_json(json{{"base", {{"kind", "klein"}}}, {"bumps", json::array()}}));
}

TEST_CASE("reports, OFF and CSV slices")
{
        VerificationReport r;
        r.title = "t";
        r.check("a", "anchor", true, "detail");
        json j = io::report_to_json(r);
        CHECK(j["overall"] == true);
        CHECK(j["claims"][0]["anchor"] == "anchor");
        CHECK_FALSE(j.contains("seconds"));

        SimplicialComplex k({Point{0, 0, 0, 1}, Point{1, 0, 0, 2}, Point{0, 1, 0, 3}});
        k.insert({0, 1, 2});
        std::string off = io::to_off(k, {0, 1, 3});
        CHECK(off.rfind("OFF\n3 1 0\n", 0) == 0);
        CHECK(off.find("\n3 0 1 2\n") != std::string::npos);

        io::SliceSpec sl = io::parse_slice("y=0.5,z=0", 4);
        CHECK(sl.a == 0);
        CHECK(sl.b == 3);
        CHECK(sl.origin[1] == 0.5);
        CHECK_THROWS(io::parse_slice("y=0.5", 4));
        CHECK_THROWS(io::parse_slice("w=1,z=0", 4));
        sl.na = 3;
        sl.nb = 4;
        std::string csv = io::field_slice_csv(ImplicitManifold::hypercube(4, 20.0 / 3), sl);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 12);
        CHECK(csv.rfind("x,t,field\n", 0) == 0);

        CHECK(io::points_csv({Point{1, 2}}, {"a"}) == "x,y,label\n1,2,a\n");
}
