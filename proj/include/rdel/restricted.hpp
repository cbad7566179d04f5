// Restricted Delaunay complexes: nerve of the Voronoi diagram restricted to an implicit manifold.
#pragma once

#include "rdel/complex.hpp"
#include "rdel/delaunay.hpp"
#include "rdel/manifold.hpp"

#include <map>
#include <string>
#include <vector>

namespace rdel {

struct IntersectionOptions {
        double resolution = 0.0; // absolute; 0 means tol.resolution * manifold extent
        double min_cell = tol.min_cell;
        double refine = 1e-10;   // final root bracket, relative to the resolution scale
        bool first_only = false; // stop at the first certified crossing
};

struct IntersectionResult {
        std::vector<Point> points;       // transversal crossings, one per cluster of size < resolution
        std::vector<ParamPoint> params;  // same points in face coordinates
        bool ambiguous = false;          // some cell could be neither certified empty nor shown to cross
        std::vector<Point> ambiguous_at; // centres of such cells
        long cells = 0;
};

IntersectionResult face_surface_intersections(const VoronoiFace& face, const ImplicitManifold& m,
                                              const IntersectionOptions& opt = {});

struct Evidence {
        Point point;        // on M and in the dual face
        double radius = 0;  // common distance to the simplex vertices
        double margin = 0;  // distance gap to the nearest other competitor
};

struct RestrictedComplex {
        SimplicialComplex complex;
        std::map<Simplex, Evidence> evidence;
        std::vector<Simplex> ambiguous;
};

// Box comfortably containing M, used to clip unbounded Voronoi faces.
Box manifold_box(const ImplicitManifold& m);

RestrictedComplex build_restricted(const DelaunayTriangulation& t, const ImplicitManifold& m,
                                   const IntersectionOptions& opt = {});

// Checks the evidence conditions for y against every landmark.
bool verify_evidence(const std::vector<Point>& landmarks, const Simplex& sigma, const ImplicitManifold& m,
                     const Evidence& e, std::string* why = nullptr);

enum class CertificateStatus { Certified, Absent, NoCertificate };

struct MembershipCertificate {
        CertificateStatus status = CertificateStatus::NoCertificate;
        Evidence evidence;
        int iterations = 0;
        int blocker = -1; // closer landmark when absent
        bool holds() const { return status == CertificateStatus::Certified; }
};

// Refines a candidate near M onto M within the equidistance flat of sigma.
MembershipCertificate restricted_membership_certificate(const std::vector<Point>& landmarks, const Simplex& sigma,
                                                        const ImplicitManifold& m, const Point& candidate);

std::string to_string(CertificateStatus s);

} // namespace rdel
