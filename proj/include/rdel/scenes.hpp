// Scripted counter-example scenes on the smoothed 4-cube, positive controls and their reports.
#pragma once

#include "rdel/complex.hpp"
#include "rdel/delaunay.hpp"
#include "rdel/manifold.hpp"
#include "rdel/restricted.hpp"
#include "rdel/sampling.hpp"
#include "rdel/witness.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rdel {

enum class SceneMode { Local, Full };

struct SceneParams {
        double mu = 0.3;
        double delta = 1e-3;
        double eta = 0.01;           // inflation of the bump of c
        double nu = 0.1;             // witness covering radius / reach
        double cloud_spacing = 0.25; // background cloud spacing (<= epsilon / 4)
        SceneMode mode = SceneMode::Local;
        std::uint64_t seed = 1;
        bool literal_q = false;      // use q with z = +delta^2 instead of the mirrored point

        double Delta() const { return 2.0 / mu; }
        double reach() const { return 1.0 / mu; }
        double epsilon() const { return 1.0; }
        // throws GeometryError when out of range
        void validate() const;
};

struct Claim {
        std::string id;
        std::string anchor;       // the statement being checked
        double measured = 0.0;
        double threshold = 0.0;
        double margin = 0.0;      // positive when the claim holds
        double tolerance = 0.0;
        bool pass = false;
        bool warning = false;     // passes with margin below 10x tolerance
        bool decisive = true;     // counted in the verdict
        std::string detail;
};

struct VerificationReport {
        std::string title;
        std::vector<Claim> claims;
        double seconds = 0.0;

        bool overall() const;
        const Claim* find(const std::string& id) const;
        Claim& add(Claim c);
        // measured <= threshold (margin = threshold - measured)
        Claim& at_most(const std::string& id, const std::string& anchor, double measured, double threshold,
                       double tolerance, const std::string& detail = {});
        // measured >= threshold
        Claim& at_least(const std::string& id, const std::string& anchor, double measured, double threshold,
                        double tolerance, const std::string& detail = {});
        Claim& check(const std::string& id, const std::string& anchor, bool ok, const std::string& detail = {});
        void merge(const VerificationReport& other, const std::string& prefix = {});
        std::string text() const;
};

struct Scene {
        SceneParams params;
        std::map<std::string, Point> named;
        ImplicitManifold base;
        ImplicitManifold S;      // scene A surface
        ImplicitManifold Splus;  // scene B
        ImplicitManifold Sminus; // scenes B and C
        std::shared_ptr<const Cloud> cloud;
        LandmarkSet L0;          // farthest-point sample before the substitution
        LandmarkSet L;
        std::optional<WitnessSet> witnesses;
        VerificationReport construction; // claims checked while building
        bool aborted = false;
        double deflation = 1.0;  // factor applied to the bump of c on S-
        double eta_effective = 0.0;

        const Point& operator[](const std::string& name) const { return named.at(name); }
        Simplex simplex(std::initializer_list<const char*> names) const;
};

// Closed forms of the named points.
std::map<std::string, Point> scene_points(const SceneParams& p);

Scene build_scene_A(const SceneParams& p);
VerificationReport verify_scene_A(const Scene& s);

// Extends scene A with q, the excisions, the ridge and the deflated surface.
Scene build_scene_B(const Scene& a);
Scene build_scene_B(const SceneParams& p);
VerificationReport verify_scene_B(const Scene& s);

Scene build_scene_C(const Scene& b);
Scene build_scene_C(const SceneParams& p);
VerificationReport verify_scene_C(const Scene& s, const std::vector<double>& nus = {0.3, 0.1, 0.03});

// Explicit finite witness set of scene C: vertices of [p, u, v, w], one point of S- in the dual of each
// edge and facet, and c''.
WitnessSet scene_C_witnesses(const Scene& c);

// Restricted complex around [u, v, w, p] computed from landmark-local dual faces: the tetrahedra on the
// two upper triangles and the tetrahedron itself, with their faces and evidence points.
RestrictedComplex local_restricted_star(const Scene& s, const ImplicitManifold& m);

struct ControlParams {
        double eps_fraction = 0.05; // epsilon / reach
        int witness_trials = 20;
        std::uint64_t seed = 1;
};

VerificationReport run_positive_controls(const ControlParams& p = {});
// Deflating c in scene A and dropping c'' from W in scene C.
VerificationReport run_negative_controls(const SceneParams& p);
VerificationReport run_delta_sweep(const SceneParams& p, const std::vector<double>& deltas = {1e-1, 1e-2, 1e-3});

// Pass/fail of acceptance criteria 1-8 read off the scene reports.
struct CriterionVerdict {
        bool pass = false;
        bool warning = false;   // some contributing claim passed with a thin margin
        std::string failed;     // ids of failing claims
};
std::map<int, CriterionVerdict> criterion_verdicts(const VerificationReport& a, const VerificationReport& b,
                                                   const VerificationReport& c);

// Landmark-local Delaunay membership of sigma for M: dual face meets M.
struct LocalMembership {
        bool member = false;
        bool ambiguous = false;
        std::vector<Point> crossings;
        VoronoiFace face;
};
LocalMembership local_membership(const std::vector<Point>& landmarks, const Simplex& sigma, const ImplicitManifold& m,
                                 bool list_all = false);

// Grid on the flat facet around center, pushed onto m (points of m within radius of center).
Cloud facet_patch_cloud(const ImplicitManifold& m, const Point& center, double radius, double spacing,
                        std::uint64_t seed);

} // namespace rdel
