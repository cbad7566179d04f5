// JSON, OFF and CSV serialization of complexes, landmarks, manifolds, witnesses and reports.
#pragma once

#include "rdel/complex.hpp"
#include "rdel/manifold.hpp"
#include "rdel/restricted.hpp"
#include "rdel/sampling.hpp"
#include "rdel/scenes.hpp"
#include "rdel/witness.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace rdel::io {

using json = nlohmann::json;

json points_to_json(const std::vector<Point>& pts);
std::vector<Point> points_from_json(const json& j);

// {dimension, vertices: [[coords]], simplices: {"k": [[indices]]}}
json complex_to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const json& j);
// Hash of the simplex sets and vertex coordinates.
std::uint64_t complex_checksum(const SimplicialComplex& k);

// Complex schema plus "evidence": [{simplex, point, radius, margin}] and "ambiguous".
json restricted_to_json(const RestrictedComplex& r);
RestrictedComplex restricted_from_json(const json& j);

// Complex schema plus "witness_of": [{simplex, witness, point}].
json witness_complex_to_json(const WitnessComplex& wc, const WitnessSet& w);

json witnesses_to_json(const WitnessSet& w);
WitnessSet witnesses_from_json(const json& j);

json landmarks_to_json(const LandmarkSet& L);
LandmarkSet landmarks_from_json(const json& j);

json manifold_to_json(const ImplicitManifold& m);
ImplicitManifold manifold_from_json(const json& j);

json report_to_json(const VerificationReport& r);

// Triangles (and bare edges) projected on three coordinate axes.
std::string to_off(const SimplicialComplex& k, std::array<int, 3> axes = {0, 1, 2});

// Field values on a grid spanned by axes a and b through origin: header "a,b,<names>,field".
struct SliceSpec {
        Point origin;
        int a = 0, b = 1;
        double a0 = -1, a1 = 1, b0 = -1, b1 = 1;
        int na = 101, nb = 101;
};
std::string field_slice_csv(const ImplicitManifold& m, const SliceSpec& s);
// Parses "z=0,t=6.6" style fixings; the two remaining axes span the grid.
SliceSpec parse_slice(const std::string& spec, int d);

std::string points_csv(const std::vector<Point>& pts, const std::vector<std::string>& labels = {});

const char* axis_name(int i);

} // namespace rdel::io
