#include "rdel/complex.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace rdel;

namespace {

SimplicialComplex from_triangles(const std::vector<Simplex>& tris)
{
        SimplicialComplex k;
        for (const Simplex& t : tris)
                k.insert(make_simplex(t));
        return k;
}

} // namespace

TEST_CASE("insert adds every face and keeps the complex closed")
{
        SimplicialComplex k;
        k.insert(make_simplex({3, 1, 2, 0}));
        CHECK(k.dimension() == 3);
        CHECK(k.count(0) == 4);
        CHECK(k.count(1) == 6);
        CHECK(k.count(2) == 4);
        CHECK(k.contains({1, 3}));
        CHECK_FALSE(k.contains({1, 4}));
        CHECK(k.valid());
        CHECK(k.cofacets({0, 1, 2}).size() == 1);
        CHECK(faces_of_dim({0, 1, 2, 3}, 1).size() == 6);
        CHECK(facets_of({0, 1, 2}).size() == 3);
        CHECK(make_simplex({2, 0, 1}) == Simplex{0, 1, 2});
}

TEST_CASE("tetrahedron boundary is a 2-sphere")
{
        SimplicialComplex k = from_triangles({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
        CHECK(euler_characteristic(k) == 2);
        CHECK(betti_numbers_mod2(k) == std::vector<long>{1, 0, 1});
        CHECK(is_closed_pseudomanifold(k, 2).closed);
}

TEST_CASE("seven-vertex torus and six-vertex projective plane")
{
        std::vector<Simplex> torus;
        for (int i = 0; i < 7; ++i) {
                torus.push_back(make_simplex({i, (i + 1) % 7, (i + 3) % 7}));
                torus.push_back(make_simplex({i, (i + 2) % 7, (i + 3) % 7}));
        }
        SimplicialComplex t = from_triangles(torus);
        CHECK(euler_characteristic(t) == 0);
        CHECK(betti_numbers_mod2(t) == std::vector<long>{1, 2, 1});
        CHECK(is_closed_pseudomanifold(t, 2).closed);

        SimplicialComplex rp2 = from_triangles({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                                {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}});
        CHECK(euler_characteristic(rp2) == 1);
        // mod 2 sees the non-orientable top class
        CHECK(betti_numbers_mod2(rp2) == std::vector<long>{1, 1, 1});
}

TEST_CASE("pseudomanifold check reports boundary faces")
{
        SimplicialComplex k = from_triangles({{0, 1, 2}, {0, 2, 3}});
        PseudomanifoldCheck pm = is_closed_pseudomanifold(k, 2);
        CHECK_FALSE(pm.closed);
        CHECK(pm.offenders.size() == 4);
        k.insert({4, 5});
        pm = is_closed_pseudomanifold(k, 2);
        CHECK_FALSE(pm.pure);
}

TEST_CASE("complex_diff lists the simplices present on one side")
{
        SimplicialComplex a = from_triangles({{0, 1, 2}});
        SimplicialComplex b = from_triangles({{0, 1, 2}});
        CHECK(complex_diff(a, b).empty());
        a.insert({0, 1, 2, 3});
        ComplexDiff d = complex_diff(a, b);
        CHECK(d.only_in_b.empty());
        CHECK(d.only_in_a.size() == 8); // vertex 3, three edges, three triangles, one tetrahedron
        CHECK(euler_characteristic(a) - euler_characteristic(b) == 0);
}

TEST_CASE("Euler-Poincare on random complexes")
{
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 40; ++trial) {
                SimplicialComplex k = oracle::random_complex(rng, 8, 3, 6);
                CHECK(euler_characteristic(k) == oracle::chi_from_counts(k));
                CHECK(oracle::chi_from_betti(betti_numbers_mod2(k)) == oracle::chi_from_counts(k));
        }
}

TEST_CASE("dense and sparse GF(2) ranks agree")
{
        std::mt19937_64 rng(5);
        std::bernoulli_distribution coin(0.3);
        for (int trial = 0; trial < 30; ++trial) {
                std::vector<std::vector<int>> cols(12);
                for (auto& c : cols)
                        for (int r = 0; r < 10; ++r)
                                if (coin(rng))
                                        c.push_back(r);
                CHECK(gf2_rank_dense(cols, 10) == gf2_rank_sparse(cols));
        }
        CHECK(gf2_rank_sparse({{0, 1}, {1, 2}, {0, 2}}) == 2);
}
