// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 when any criterion fails.

#include "rdel/restricted.hpp"
#include "rdel/scenes.hpp"
#include "rdel/witness.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace rdel;

namespace {

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

int failures = 0;

void line(int id, bool pass, const std::string& what, const std::string& detail, double seconds)
{
        failures += !pass;
        std::printf("criterion %2d: %s  %s  [%s] (%.3g s)\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str(),
                    seconds);
        std::fflush(stdout);
}

std::vector<Point> pick(const std::map<std::string, Point>& n, std::initializer_list<const char*> names)
{
        std::vector<Point> out;
        for (const char* s : names)
                out.push_back(n.at(s));
        return out;
}

std::string fmt(const char* f, double a, double b = 0)
{
        char buf[128];
        std::snprintf(buf, sizeof buf, f, a, b);
        return buf;
}

void verdict_line(int id, const std::map<int, CriterionVerdict>& v, const std::string& what, double seconds,
                  bool budget_ok = true, const std::string& extra = {})
{
        const CriterionVerdict& cv = v.at(id);
        std::string detail = cv.pass ? "all contributing claims hold" : "failed: " + cv.failed;
        if (cv.warning)
                detail += ", thin margin";
        if (!extra.empty())
                detail += ", " + extra;
        line(id, cv.pass && budget_ok, what, detail, seconds);
}

// 2D restricted Delaunay vs brute-force nerve, witness complex vs enumeration, Euler-Poincare.
std::string oracles(bool& ok)
{
        ImplicitManifold circle = ImplicitManifold::sphere(Point{0, 0}, 1.0);
        std::mt19937_64 rng(2024);
        int nerve = 0, wit = 0, ep = 0;
        for (int i = 0; i < 50; ++i) {
                auto pts = oracle::annulus_points(rng, 3 + static_cast<int>(rng() % 30), 1.0, 1.0);
                RestrictedComplex rc = build_restricted(build_delaunay(pts, i), circle);
                nerve += rc.ambiguous.empty() && oracle::all_simplices(rc.complex) == oracle::circle_nerve(pts);
        }
        for (int i = 0; i < 50; ++i) {
                const int d = 2 + i % 3;
                auto L = oracle::box_points(rng, 4 + static_cast<int>(rng() % 7), d);
                auto W = oracle::box_points(rng, 40, d);
                WitnessComplex wc = build_witness_complex(L, explicit_witnesses(W), d);
                wit += oracle::all_simplices(wc.complex) == oracle::witness_complex(L, W, d);
        }
        for (int i = 0; i < 100; ++i) {
                SimplicialComplex k = oracle::random_complex(rng, 6 + i % 5, 4, 3 + i % 8);
                const long chi = oracle::chi_from_counts(k);
                ep += chi == euler_characteristic(k) && chi == oracle::chi_from_betti(betti_numbers_mod2(k));
        }
        ok = nerve == 50 && wit == 50 && ep == 100;
        return std::to_string(nerve) + "/50 circle nerves, " + std::to_string(wit) + "/50 witness complexes, " +
               std::to_string(ep) + "/100 Euler-Poincare";
}

} // namespace

int main()
{
        const SceneParams P;

        // 1: circumcenter of [u, v, w, p0] at delta = 0.01
        {
                SceneParams p = P;
                p.delta = 0.01;
                const auto t0 = clock_type::now();
                auto n = scene_points(p);
                Circumsphere cs = circumcenter(pick(n, {"u", "v", "w", "p0"}));
                const double s = since(t0);
                const double dc = dist(cs.center, Point{0.5, 0.5, p.delta / 2, p.Delta()});
                const double dr = std::fabs(cs.radius * cs.radius - (0.5 + p.delta * p.delta / 4));
                line(1, dc <= 1e-9 && dr <= 1e-12 && s < 1e-3, "circumcenter of [u, v, w, p0] is (1/2, 1/2, delta/2, Delta)",
                     fmt("center error %.3g, radius^2 error %.3g", dc, dr), s);
        }
        // 2: |c - p| = |c - u|
        {
                const auto t0 = clock_type::now();
                double worst = 0;
                for (double d : {1e-1, 1e-2, 1e-3}) {
                        SceneParams p = P;
                        p.delta = d;
                        auto n = scene_points(p);
                        worst = std::max(worst, std::fabs(dist(n.at("c"), n.at("p")) - dist(n.at("c"), n.at("u"))));
                }
                line(2, worst <= 1e-12, "|c - p| = |c - u|", fmt("max difference %.3g over three deltas", worst),
                     since(t0));
        }
        // 3: pentahedron circumcenter
        {
                SceneParams p = P;
                p.literal_q = true;
                const auto t0 = clock_type::now();
                auto n = scene_points(p);
                Circumsphere cs = circumcenter(pick(n, {"p", "u", "v", "w", "q"}));
                const double s = since(t0);
                const double dc =
                        dist(cs.center, Point{0.5, 0.5, p.delta * p.delta / 2, p.Delta() + p.delta / 2});
                line(3, dc <= 1e-9 && cs.radius < 1 && s < 1e-3,
                     "circumcenter of [p, u, v, w, q] is (1/2, 1/2, delta^2/2, Delta + delta/2), radius < 1",
                     fmt("center error %.3g, radius %.6g", dc, cs.radius), s);
        }

        auto t0 = clock_type::now();
        Scene a = build_scene_A(P);
        VerificationReport ra = verify_scene_A(a);
        const double time_a = since(t0);
        t0 = clock_type::now();
        Scene b = build_scene_B(a);
        VerificationReport rb = verify_scene_B(b);
        const double time_b = since(t0);
        t0 = clock_type::now();
        Scene c = build_scene_C(b);
        VerificationReport rc = verify_scene_C(c);
        const double time_c = since(t0);
        auto v = criterion_verdicts(ra, rb, rc);

        verdict_line(4, v, "scene A: [u, v, w, p] restricted, its upper triangles have one coface, not closed", time_a,
                     time_a < 10, fmt("%.2f s including sampling", time_a));
        verdict_line(5, v, "scene B: Dels+ and Dels- differ exactly by [p, u, v, w], chi differs by one", time_b, true,
                     "landmark-local mode");
        verdict_line(6, v, "scene C: [p, u, v, w] witnessed for nu in {0.3, 0.1, 0.03} and both finite W, not in Dels-",
                     time_c, time_c < 180, fmt("%.1f s for three nu", time_c));
        verdict_line(7, v, "scene C: |c - c''| < (d_c - |c - p|)/2 and B(c'', |c'' - p|) empty of other landmarks", 0);
        verdict_line(8, v, "Voronoi 2-faces around e within the angle bound, two above t = Delta + delta/2", 0);

        {
                t0 = clock_type::now();
                VerificationReport r = run_positive_controls();
                const double s = since(t0);
                std::string failed;
                for (const Claim& cl : r.claims)
                        if (!cl.pass)
                                failed += cl.id + " ";
                line(9, r.overall() && s < 300, "circle, sphere and torus recovered, witness inclusion 20/20",
                     failed.empty() ? r.find("witness_inclusion")->detail : "failed: " + failed, s);
        }
        {
                t0 = clock_type::now();
                bool ok = false;
                std::string detail = oracles(ok);
                const double s = since(t0);
                line(10, ok && s < 120, "oracle equivalences", detail, s);
        }
        {
                t0 = clock_type::now();
                VerificationReport r = run_delta_sweep(P);
                std::string failed;
                for (const Claim& cl : r.claims)
                        if (!cl.pass)
                                failed += cl.id + " ";
                line(11, r.overall(), "criteria 1-8 identical and passing for delta in {0.1, 0.01, 0.001}",
                     failed.empty() ? "all verdicts identical" : "failed: " + failed, since(t0));
        }
        {
                t0 = clock_type::now();
                VerificationReport r = run_negative_controls(P);
                std::string detail;
                for (const Claim& cl : r.claims)
                        if (cl.decisive)
                                detail += cl.id + (cl.pass ? " flips; " : " does NOT flip: " + cl.detail + "; ");
                line(12, r.overall(), "deflating c removes the certificate, dropping c'' removes the witness", detail,
                     since(t0));
        }
        std::printf("%d criteria failed\n", failures);
        return failures ? 1 : 0;
}
