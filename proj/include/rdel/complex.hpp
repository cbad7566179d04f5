// Abstract simplicial complexes, Euler characteristic and mod-2 homology.
#pragma once

#include "rdel/kernel.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace rdel {

// Strictly increasing vertex indices.
using Simplex = std::vector<int>;

Simplex make_simplex(std::vector<int> vertices);
// All faces of s with exactly k+1 vertices.
std::vector<Simplex> faces_of_dim(const Simplex& s, int k);
// Codimension-one faces.
std::vector<Simplex> facets_of(const Simplex& s);
std::string to_string(const Simplex& s);

class SimplicialComplex {
public:
        SimplicialComplex() = default;
        explicit SimplicialComplex(std::vector<Point> coords) : vertex_coords_(std::move(coords)) {}

        // Inserts s together with all of its faces.
        void insert(const Simplex& s);
        bool contains(const Simplex& s) const;
        // Highest simplex dimension, -1 when empty.
        int dimension() const;
        const std::set<Simplex>& simplices(int k) const;
        std::size_t count(int k) const { return simplices(k).size(); }
        std::size_t size() const;
        // Simplices of dimension k+1 having s as a facet.
        std::vector<Simplex> cofacets(const Simplex& s) const;

        const std::vector<Point>& vertex_coords() const { return vertex_coords_; }
        void set_vertex_coords(std::vector<Point> c) { vertex_coords_ = std::move(c); }
        int ambient_dim() const { return vertex_coords_.empty() ? 0 : vertex_coords_[0].dim(); }

        // Re-checks downward closure and vertex ranges.
        bool valid() const;

private:
        std::vector<Point> vertex_coords_;
        std::vector<std::set<Simplex>> faces_;
};

long euler_characteristic(const SimplicialComplex& k);

// Ranks of H_0..H_dim over GF(2).
std::vector<long> betti_numbers_mod2(const SimplicialComplex& k);

// Rank over GF(2) of a boundary matrix given by columns of sorted row indices.
std::size_t gf2_rank_dense(const std::vector<std::vector<int>>& columns, std::size_t rows);
std::size_t gf2_rank_sparse(std::vector<std::vector<int>> columns);

struct PseudomanifoldCheck {
        bool closed = false;
        bool pure = false;
        std::vector<Simplex> offenders; // (k-1)-faces not bounding exactly two k-simplices
        std::vector<Simplex> impure;    // maximal simplices of dimension < k
};

PseudomanifoldCheck is_closed_pseudomanifold(const SimplicialComplex& k, int dim);

struct ComplexDiff {
        std::vector<Simplex> only_in_a;
        std::vector<Simplex> only_in_b;
        bool empty() const { return only_in_a.empty() && only_in_b.empty(); }
};

ComplexDiff complex_diff(const SimplicialComplex& a, const SimplicialComplex& b);

} // namespace rdel
