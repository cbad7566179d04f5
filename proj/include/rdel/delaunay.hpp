// Ambient Delaunay triangulations (lifted lower hull) and explicit Voronoi faces.
#pragma once

#include "rdel/complex.hpp"
#include "rdel/kernel.hpp"
#include "rdel/polytope.hpp"

#include <cstdint>
#include <vector>

namespace rdel {

struct Box {
        Point lo, hi;
        bool contains(const Point& x) const;
        double diameter() const { return dist(lo, hi); }
};

Box bounding_box(const std::vector<Point>& pts, double margin);

struct DelaunayTriangulation {
        int dim = 0;
        std::vector<Point> landmarks;
        std::vector<Simplex> cells;
        // adjacency[c][i]: cell across the facet opposite cells[c][i], or -1 on the hull boundary.
        std::vector<std::vector<int>> adjacency;
        std::vector<std::vector<int>> vertex_cells;

        bool contains(const Simplex& s) const;
        // Landmarks adjacent to some vertex of s, excluding s itself.
        std::vector<int> neighbors_of(const Simplex& s) const;
        // All k-simplices of the triangulation, sorted.
        std::vector<Simplex> simplices(int k) const;
        SimplicialComplex complex() const;
};

// Incremental lower hull of the lifted points; insertion order shuffled by seed.
DelaunayTriangulation build_delaunay(const std::vector<Point>& pts, std::uint64_t seed = 0);

// normal . (x - base) <= offset, label = landmark index or a negative box id.
struct HalfSpace {
        Point normal;
        double offset = 0.0;
        int label = -1;
};

struct VoronoiFace {
        Simplex generator;
        int dim = 0;
        AffineFlat flat;
        std::vector<HalfSpace> halfspaces;
        Polytope polytope; // in flat coordinates, clipped to the box
        bool empty = true;
        bool bounded = true; // false when a box side is active
        std::vector<Point> vertices;
        std::vector<Point> rays; // unbounded directions of 1-faces

        Point ambient(const ParamPoint& s) const;
        // Landmarks whose bisector supports a facet of the polytope.
        std::vector<int> active_labels() const;
};

inline constexpr int kBoxLabelBase = -1;

// Face of sigma using only the candidate landmarks as competitors.
VoronoiFace make_voronoi_face(const std::vector<Point>& landmarks, const Simplex& sigma,
                              const std::vector<int>& candidates, const Box& box);
VoronoiFace voronoi_face(const DelaunayTriangulation& t, const Simplex& sigma, const Box& box);
// Competitors are all landmarks: no triangulation needed.
VoronoiFace local_voronoi_face(const std::vector<Point>& landmarks, const Simplex& sigma, const Box& box);

// True iff no landmark outside sigma lies in the open ball (exact comparisons).
bool is_delaunay_simplex(const std::vector<Point>& pts, const Simplex& sigma, const Ball& ball);
// min over landmarks outside sigma of |x - c| - r.
double ball_clearance(const std::vector<Point>& pts, const Simplex& sigma, const Ball& ball);

} // namespace rdel
