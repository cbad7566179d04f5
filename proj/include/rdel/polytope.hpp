// Convex polytopes of dimension 1..3 in the parameter space of an affine flat,
// obtained by clipping a cube with labelled half-spaces.
#pragma once

#include <array>
#include <vector>

namespace rdel {

// n . s <= b in parameter coordinates. Labels >= 0 name landmarks, < 0 name box sides.
struct ParamHalfSpace {
        std::array<double, 3> n{};
        double b = 0.0;
        int label = -1;
};

using ParamPoint = std::array<double, 3>;

struct ParamFacet {
        std::vector<int> vertices; // indices into Polytope::vertices, cyclic for k = 3
        int label = -1;
};

struct Polytope {
        int dim = 0;
        bool empty = true;
        std::vector<ParamPoint> vertices;
        // k = 1: facets are the two endpoints; k = 2: edges (v_i, v_i+1); k = 3: polygons.
        std::vector<ParamFacet> facets;

        ParamPoint centroid() const;
        // Triangulation into k-simplices (vertex coordinates).
        std::vector<std::vector<ParamPoint>> simplices() const;
};

// Clips [-r, r]^k by the half-spaces. Labels of the initial cube are -1000-i.
Polytope clip_cube(int k, double r, const std::vector<ParamHalfSpace>& hs);

inline constexpr int kCubeLabel = -1000;

} // namespace rdel
