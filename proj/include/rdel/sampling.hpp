// Background clouds and farthest-point landmark sampling on implicit manifolds.
#pragma once

#include "rdel/kernel.hpp"
#include "rdel/manifold.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rdel {

struct Cloud {
        std::vector<Point> points;
        double spacing = 0.0;
        double covering_bound = 0.0; // guaranteed for the base surface
        std::uint64_t seed = 0;
        std::uint64_t checksum = 0;
};

inline constexpr std::size_t kMaxCloudPoints = 10'000'000;

// Grid on an enclosing box boundary (or a parameter grid for the torus) pushed onto M.
Cloud background_cloud(const ImplicitManifold& m, double spacing, std::uint64_t seed = 0);

std::uint64_t checksum(const std::vector<Point>& pts);

struct LandmarkSet {
        std::vector<Point> points;
        double epsilon = 0.0;
        double sparsity = 0.0; // measured min pairwise distance
        double density = 0.0;  // measured max distance from the cloud to the set
        int farthest_cloud_index = -1;
        std::vector<Point> seeds;
        std::uint64_t cloud_checksum = 0;
        std::vector<std::string> history;   // excisions and substitutions applied
        std::map<std::string, int> named;   // named landmarks, kept in sync with edits

        int index_of(const std::string& name) const;
        const Point& operator[](const std::string& name) const { return points.at(index_of(name)); }
};

// max over cloud points of the distance to the set; hint is a radius expected to cover most points.
double covering_radius(const std::vector<Point>& set, const Cloud& cloud, double hint, int* farthest = nullptr);

// Recomputes sparsity and density (brute force over a bucket grid).
void measure(LandmarkSet& L, const Cloud& cloud);
double min_pairwise_distance(const std::vector<Point>& pts);

// Seeds come first in the result and keep their order; ties go to the lowest cloud index.
LandmarkSet farthest_point_sample(const ImplicitManifold& m, const std::vector<Point>& seeds, double epsilon,
                                  const Cloud& cloud);

// Removes landmarks strictly inside b except the protected indices.
LandmarkSet excise_ball(const LandmarkSet& L, const Ball& b, const std::vector<int>& protect, const Cloud* cloud = nullptr);

// Replaces landmark idx by p (the point must be on M); optionally renames it.
LandmarkSet substitute(const LandmarkSet& L, int idx, const Point& p, const ImplicitManifold& m,
                       const std::string& new_name = {}, const Cloud* cloud = nullptr);

// Appends a point on M.
LandmarkSet insert_landmark(const LandmarkSet& L, const Point& p, const ImplicitManifold& m,
                            const std::string& name = {}, const Cloud* cloud = nullptr);

} // namespace rdel
