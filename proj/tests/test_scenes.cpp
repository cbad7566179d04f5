#include "rdel/scenes.hpp"

#include <doctest.h>

#include <cmath>

using namespace rdel;

namespace {

std::vector<Point> pick(const std::map<std::string, Point>& n, std::initializer_list<const char*> names)
{
        std::vector<Point> out;
        for (const char* s : names)
                out.push_back(n.at(s));
        return out;
}

const Scene& scene_A()
{
        static const Scene s = build_scene_A(SceneParams{});
        return s;
}

} // namespace

TEST_CASE("parameter validation")
{
        SceneParams p;
        CHECK_NOTHROW(p.validate());
        p.mu = 0.6;
        CHECK_THROWS_AS(p.validate(), GeometryError);
        p = {};
        p.delta = -1;
        CHECK_THROWS_AS(p.validate(), GeometryError);
        p = {};
        p.eta = 1.0;
        CHECK_THROWS_AS(p.validate(), GeometryError);
        p = {};
        p.cloud_spacing = 0.5;
        CHECK_THROWS_AS(p.validate(), GeometryError);
        CHECK(SceneParams{}.Delta() == doctest::Approx(20.0 / 3));
}

TEST_CASE("closed forms of the named points")
{
        SceneParams p;
        p.delta = 0.01;
        auto n = scene_points(p);
        const double D = p.Delta(), d = p.delta;
        Circumsphere c0 = circumcenter(pick(n, {"u", "v", "w", "p0"}));
        CHECK(dist(c0.center, Point{0.5, 0.5, d / 2, D}) < 1e-9);
        CHECK(std::fabs(c0.radius * c0.radius - (0.5 + d * d / 4)) < 1e-12);
        CHECK(dist(c0.center, n.at("c0")) < 1e-12);

        // c is equidistant from p and u
        CHECK(std::fabs(dist(n.at("c"), n.at("p")) - dist(n.at("c"), n.at("u"))) < 1e-12);

        p.literal_q = true;
        n = scene_points(p);
        Circumsphere pent = circumcenter(pick(n, {"p", "u", "v", "w", "q"}));
        CHECK(dist(pent.center, Point{0.5, 0.5, d * d / 2, D + d / 2}) < 1e-9);
        CHECK(pent.radius < 1);
        // the mirrored q keeps the centre on the other side of the facet plane
        p.literal_q = false;
        CHECK(scene_points(p).at("q")[2] == doctest::Approx(-d * d));
}

TEST_CASE("report bookkeeping")
{
        VerificationReport r;
        r.at_most("a", "x <= 1", 0.5, 1.0, 1e-3);
        Claim& thin = r.at_least("b", "y >= 1", 1.0 + 1e-4, 1.0, 1e-4);
        CHECK(thin.pass);
        CHECK(thin.warning);
        r.check("c", "holds", true);
        CHECK(r.overall());
        Claim& info = r.check("d", "informational", false);
        info.decisive = false;
        CHECK(r.overall());
        r.check("e", "fails", false);
        CHECK_FALSE(r.overall());
        CHECK(r.find("a")->margin == doctest::Approx(0.5));
        CHECK(r.find("zz") == nullptr);
        VerificationReport outer;
        outer.merge(r, "inner.");
        CHECK(outer.find("inner.a") != nullptr);
        CHECK(r.text().find("[FAIL]") != std::string::npos);
}

TEST_CASE("scene A: the restricted complex contains a tetrahedron with free triangles")
{
        const Scene& s = scene_A();
        REQUIRE_FALSE(s.aborted);
        VerificationReport r = verify_scene_A(s);
        INFO(r.text());
        CHECK(r.overall());
        for (const char* id : {"c0_circumcenter", "p_on_Bc", "tet_certified", "not_closed", "face_angles", "two_faces_above"})
                CHECK(r.find(id) != nullptr);
        CHECK(r.find("sliver_condition")->pass);
}

TEST_CASE("scene A is a pure function of its parameters")
{
        Scene again = build_scene_A(SceneParams{});
        CHECK(checksum(again.L.points) == checksum(scene_A().L.points));
        for (const auto& [name, x] : scene_A().named)
                CHECK(again[name] == x);
}

TEST_CASE("a large delta aborts the construction with a failed margin")
{
        SceneParams p;
        p.delta = 10;
        Scene s = build_scene_A(p);
        CHECK(s.aborted);
        CHECK_FALSE(s.construction.overall());
        VerificationReport r = verify_scene_A(s);
        CHECK_FALSE(r.overall());
}

TEST_CASE("criterion verdicts need evaluated claims")
{
        VerificationReport empty;
        auto v = criterion_verdicts(empty, empty, empty);
        CHECK(v.size() == 8);
        for (const auto& [k, cv] : v)
                CHECK_FALSE(cv.pass);
}

TEST_CASE("landmark-local membership agrees with the certificate for scene A")
{
        const Scene& s = scene_A();
        const Simplex tet = s.simplex({"u", "v", "w", "p"});
        LocalMembership lm = local_membership(s.L.points, tet, s.S);
        CHECK(lm.member);
        CHECK_FALSE(lm.ambiguous);
        RestrictedComplex star = local_restricted_star(s, s.S);
        CHECK(star.complex.contains(tet));
        CHECK_FALSE(is_closed_pseudomanifold(star.complex, 3).closed);
        for (const auto& [sigma, e] : star.evidence)
                CHECK(e.margin >= 0);
}
