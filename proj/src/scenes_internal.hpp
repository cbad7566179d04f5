// Helpers shared by the scene translation units.
#pragma once

#include "rdel/scenes.hpp"

#include <chrono>
#include <string>
#include <vector>

namespace rdel::detail {

double seconds_since(std::chrono::steady_clock::time_point t0);
// Rounding allowance for floating distance comparisons at the given coordinate scale.
double float_tol(double scale);
// Largest inflation keeping the curvature radius of a bump above the target.
double eta_max();
std::vector<Point> without(const std::vector<Point>& pts, const Point& x);
std::string names(const Simplex& s, const LandmarkSet& L);
void curvature_claims(VerificationReport& r, const ImplicitManifold& m, double target_reach,
                      const std::string& prefix = "construction.");
std::vector<Simplex> restricted_cofaces(const std::vector<Point>& L, const Simplex& tri, const ImplicitManifold& m,
                                        bool* ambiguous);

} // namespace rdel::detail
