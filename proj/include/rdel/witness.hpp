// Witness complexes with exact, non-strict tie semantics.
#pragma once

#include "rdel/complex.hpp"
#include "rdel/manifold.hpp"
#include "rdel/restricted.hpp"
#include "rdel/sampling.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rdel {

struct WitnessSet {
        std::vector<Point> points;
        std::string source;    // "cloud", "explicit", "cloud+mandated", ...
        double delta = -1.0;   // measured covering radius on M, -1 when not measured
        std::vector<std::string> notes;
};

WitnessSet witnesses_from_cloud(const Cloud& cloud);
WitnessSet explicit_witnesses(std::vector<Point> pts);
void measure_covering(WitnessSet& w, const Cloud& cloud, double hint);

// Every vertex of sigma is at most as far from w as every landmark outside sigma (exact).
bool witnesses_simplex(const Point& w, const Simplex& sigma, const std::vector<Point>& landmarks);

// All simplices of dimension <= max_dim witnessed by w, ties enumerated.
std::vector<Simplex> witnessed_by(const Point& w, const std::vector<Point>& landmarks, int max_dim);

struct WitnessComplex {
        SimplicialComplex complex;
        std::map<Simplex, int> witness_of; // first witnessing point
        std::map<Simplex, int> witnessed;  // including simplices dropped by the face filter
};

// max_dim < 0 means no cap besides |L| - 1 and the ambient dimension.
WitnessComplex build_witness_complex(const std::vector<Point>& landmarks, const WitnessSet& w, int max_dim = -1);

struct MandatedFacet {
        Simplex facet;
        std::optional<Evidence> evidence;
};

// Adds one evidence point per facet plus the extra points; already present points are skipped.
WitnessSet mandate_witnesses(const WitnessSet& w, const ImplicitManifold& m, const std::vector<MandatedFacet>& facets,
                             const std::vector<Point>& extra = {});

} // namespace rdel
