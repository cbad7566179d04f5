#include "rdel/delaunay.hpp"
#include "rdel/witness.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace rdel;

TEST_CASE("witness complex matches subset enumeration")
{
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 12; ++trial) {
                const int d = 2 + trial % 2;
                auto L = oracle::box_points(rng, 6 + trial % 4, d);
                auto W = oracle::box_points(rng, 30, d);
                WitnessComplex wc = build_witness_complex(L, explicit_witnesses(W), d);
                CHECK(oracle::all_simplices(wc.complex) == oracle::witness_complex(L, W, d));
        }
}

TEST_CASE("in the plane every witnessed simplex is Delaunay")
{
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 6; ++trial) {
                auto L = oracle::box_points(rng, 20, 2);
                auto W = oracle::box_points(rng, 400, 2);
                DelaunayTriangulation t = build_delaunay(L, trial);
                WitnessComplex wc = build_witness_complex(L, explicit_witnesses(W), 2);
                for (const Simplex& s : oracle::all_simplices(wc.complex))
                        CHECK(t.contains(s));
        }
}

TEST_CASE("ties count as witnesses")
{
        std::vector<Point> L{{1, 0}, {-1, 0}, {0, 3}};
        CHECK(witnesses_simplex(Point{0, 0}, {0, 1}, L));
        CHECK(witnesses_simplex(Point{0, 0}, {0}, L));
        CHECK_FALSE(witnesses_simplex(Point{0, 2.5}, {0, 1}, L));
        auto all = witnessed_by(Point{0, 0}, L, 2);
        CHECK(std::find(all.begin(), all.end(), Simplex{0, 1}) != all.end());
        CHECK(std::find(all.begin(), all.end(), Simplex{1}) != all.end());
}

TEST_CASE("mandated witnesses must lie on M")
{
        ImplicitManifold circle = ImplicitManifold::sphere(Point{0, 0}, 1.0);
        WitnessSet w = explicit_witnesses({Point{1, 0}});
        WitnessSet m = mandate_witnesses(w, circle, {}, {Point{0, 1}, Point{1, 0}});
        CHECK(m.points.size() == 2);
        CHECK_THROWS(mandate_witnesses(w, circle, {}, {Point{0, 2}}));
}
