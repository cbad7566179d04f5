#include "rdel/scenes.hpp"

#include "scenes_internal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace rdel {

// ---------------------------------------------------------------- params, report

void SceneParams::validate() const
{
        auto bad = [](const std::string& what) { throw GeometryError("invalid parameter: " + what); };
        if (!(mu > 0.0 && mu < 0.5))
                bad("mu must lie in (0, 0.5)");
        if (!(delta > 0.0) || !std::isfinite(delta))
                bad("delta must be positive");
        if (!(eta >= 0.0 && eta < 1.0))
                bad("eta must lie in [0, 1)");
        if (!(nu > 0.0 && nu <= 1.0))
                bad("nu must lie in (0, 1]");
        if (!(cloud_spacing > 0.0 && cloud_spacing <= 0.25 * epsilon()))
                bad("spacing must lie in (0, epsilon/4]");
}

bool VerificationReport::overall() const
{
        if (claims.empty())
                return false;
        for (const Claim& c : claims)
                if (c.decisive && !c.pass)
                        return false;
        return true;
}

const Claim* VerificationReport::find(const std::string& id) const
{
        for (const Claim& c : claims)
                if (c.id == id)
                        return &c;
        return nullptr;
}

Claim& VerificationReport::add(Claim c)
{
        if (c.pass && c.tolerance > 0.0 && c.margin < 10.0 * c.tolerance)
                c.warning = true;
        claims.push_back(std::move(c));
        return claims.back();
}

Claim& VerificationReport::at_most(const std::string& id, const std::string& anchor, double measured,
                                   double threshold, double tolerance, const std::string& detail)
{
        Claim c{.id = id, .anchor = anchor, .measured = measured, .threshold = threshold,
                .margin = threshold - measured, .tolerance = tolerance, .pass = std::isfinite(measured) && measured <= threshold,
                .detail = detail};
        return add(std::move(c));
}

Claim& VerificationReport::at_least(const std::string& id, const std::string& anchor, double measured,
                                    double threshold, double tolerance, const std::string& detail)
{
        Claim c{.id = id, .anchor = anchor, .measured = measured, .threshold = threshold,
                .margin = measured - threshold, .tolerance = tolerance, .pass = std::isfinite(measured) && measured >= threshold,
                .detail = detail};
        return add(std::move(c));
}

Claim& VerificationReport::check(const std::string& id, const std::string& anchor, bool ok, const std::string& detail)
{
        Claim c{.id = id, .anchor = anchor, .measured = ok ? 1.0 : 0.0, .threshold = 1.0, .margin = ok ? 0.0 : -1.0,
                .pass = ok, .detail = detail};
        return add(std::move(c));
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix)
{
        for (Claim c : other.claims) {
                c.id = prefix + c.id;
                claims.push_back(std::move(c));
        }
}

std::string VerificationReport::text() const
{
        std::ostringstream os;
        os << title << ": " << (overall() ? "PASS" : "FAIL") << "\n";
        char buf[160];
        for (const Claim& c : claims) {
                const char* tag = !c.pass ? "FAIL" : c.warning ? "WARN" : "PASS";
                std::snprintf(buf, sizeof buf, "  [%s]%s %-34s measured=%.6g threshold=%.6g margin=%.3g", tag,
                              c.decisive ? "" : "(info)", c.id.c_str(), c.measured, c.threshold, c.margin);
                os << buf << "\n      " << c.anchor;
                if (!c.detail.empty())
                        os << "\n      " << c.detail;
                os << "\n";
        }
        return os.str();
}

// ---------------------------------------------------------------- shared helpers

Simplex Scene::simplex(std::initializer_list<const char*> names) const
{
        std::vector<int> v;
        for (const char* n : names)
                v.push_back(L.index_of(n));
        return make_simplex(v);
}

std::map<std::string, Point> scene_points(const SceneParams& p)
{
        const double D = p.Delta(), d = p.delta, s = p.literal_q ? 1.0 : -1.0;
        const double r2 = 1.0 + std::sqrt(2.0);
        std::map<std::string, Point> n;
        n["u"] = {1, 0, 0, D};
        n["v"] = {1, 1, 0, D};
        n["w"] = {0, 1, 0, D};
        n["p0"] = {0, 0, d, D};
        n["c0"] = {0.5, 0.5, d / 2, D};
        n["c"] = {0.5, 0.5, d / 2, D + d / 2};
        n["p"] = {0, 0, 0, D + d};
        n["p_base"] = {0, 0, 0, D};
        n["q"] = {r2 / 2, 0.5, s * d * d, D + d};
        n["q_base"] = {r2 / 2, 0.5, s * d * d, D};
        n["c_prime"] = {0.5, 0.5, s * d * d / 2, D + d / 2};
        n["c_puvq"] = {0.5 + d * d * (d * d + 1) / r2, 0.5, -s * 0.5, D + d / 2 + d * (d * d + 1) / r2};
        n["c_pvwq"] = {0.5, 0.5 + d * d * (d * d + 1), -s * 0.5, D + d / 2 + d * (d * d + 1)};
        return n;
}

LocalMembership local_membership(const std::vector<Point>& landmarks, const Simplex& sigma, const ImplicitManifold& m,
                                 bool list_all)
{
        LocalMembership r;
        r.face = local_voronoi_face(landmarks, sigma, manifold_box(m));
        if (r.face.empty)
                return r;
        IntersectionOptions opt;
        opt.first_only = !list_all;
        IntersectionResult res = face_surface_intersections(r.face, m, opt);
        r.crossings = res.points;
        r.member = !res.points.empty();
        r.ambiguous = res.ambiguous && !r.member;
        return r;
}

namespace detail {

double seconds_since(std::chrono::steady_clock::time_point t0)
{
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double float_tol(double scale) { return 1e-14 * std::max(1.0, scale); }

double eta_max() { return 2.04 * 2.04 / 4.0 - 1.0; }

std::vector<Point> without(const std::vector<Point>& pts, const Point& x)
{
        std::vector<Point> out;
        for (const Point& p : pts)
                if (!(p == x))
                        out.push_back(p);
        return out;
}

std::string names(const Simplex& s, const LandmarkSet& L)
{
        std::string out = "[";
        for (std::size_t i = 0; i < s.size(); ++i) {
                std::string n = std::to_string(s[i]);
                for (const auto& kv : L.named)
                        if (kv.second == s[i])
                                n = kv.first;
                out += (i ? "," : "") + n;
        }
        return out + "]";
}

void curvature_claims(VerificationReport& r, const ImplicitManifold& m, double target_reach, const std::string& prefix)
{
        for (std::size_t i = 0; i < m.bumps().size(); ++i) {
                const Bump& b = m.bumps()[i];
                const double k = max_bump_curvature(m, static_cast<int>(i), 60);
                r.at_most(prefix + "bump_curvature_" + b.name, "bumps keep the curvature radius at least rch(M)/2 = Delta/2",
                          k, 1.0 / target_reach, 1e-3 / target_reach,
                          "analytic radius " + std::to_string(b.curvature_radius()) +
                                  (b.capped ? ", support capped by placement" : ""));
        }
}

// Tetrahedra sharing the triangle tri that are in the restricted complex.
std::vector<Simplex> restricted_cofaces(const std::vector<Point>& L, const Simplex& tri, const ImplicitManifold& m,
                                        bool* ambiguous)
{
        std::vector<Simplex> out;
        VoronoiFace f = local_voronoi_face(L, tri, manifold_box(m));
        for (int q : f.active_labels()) {
                std::vector<int> t = tri;
                t.push_back(q);
                Simplex tet = make_simplex(t);
                LocalMembership lm = local_membership(L, tet, m);
                if (lm.ambiguous && ambiguous)
                        *ambiguous = true;
                if (lm.member)
                        out.push_back(tet);
        }
        return out;
}

} // namespace detail

using namespace detail;

// ---------------------------------------------------------------- scene A

namespace {

const char* kAnchorC0 = "c0 = (1/2, 1/2, delta/2, Delta) is the circumcenter of [u, v, w, p0]";

void construction_A(Scene& s)
{
        const SceneParams& P = s.params;
        const double D = P.Delta(), d = P.delta;
        VerificationReport& R = s.construction;

        // preconditions the construction relies on
        const double cu = std::sqrt((1 + d * d) / 2);
        R.at_most("c_u_below_mu_reach", "||c - u|| = sqrt(1 + delta^2)/sqrt(2) < mu rch(M)", cu, P.mu * P.reach(),
                  float_tol(1));
        R.at_most("p0_on_flat_facet", "p0 lies on the flat facet t = Delta", d, D / 2, float_tol(D));
        if (!R.overall())
                throw GeometryError("delta is not small enough for the construction");

        s.base = ImplicitManifold::hypercube(4, D);
        s.cloud = std::make_shared<const Cloud>(background_cloud(s.base, P.cloud_spacing, P.seed));
        const std::vector<Point> seeds{s["u"], s["v"], s["w"], s["p0"]};
        s.L0 = farthest_point_sample(s.base, seeds, P.epsilon(), *s.cloud);
        s.L0.named = {{"u", 0}, {"v", 1}, {"w", 2}, {"p0", 3}};

        s.eta_effective = std::min(P.eta, 0.25 * eta_max());
        const std::vector<Point> fixed = without(s.L0.points, s["p0"]);
        const double rho_c = bump_support_for(d / 2, D / 2), rho_p = bump_support_for(d, D / 2);
        // supports of c and p must stay disjoint: centres are sqrt(1/2 + delta^2/4) apart
        const double gap = dist(s["c0"], s["p_base"]) - 0.01;
        const double cap_c = std::min(rho_c, 0.45 * gap), cap_p = std::min(rho_p, gap - cap_c);

        BumpOptions oc;
        oc.name = "c";
        oc.scale = 1.0 + s.eta_effective;
        oc.keep_fixed = fixed;
        oc.max_support = cap_c;
        s.S = add_bump(s.base, s["c0"], d / 2, oc);
        BumpOptions op;
        op.name = "p";
        op.keep_fixed = fixed;
        op.max_support = cap_p;
        s.S = add_bump(s.S, s["p_base"], d, op);

        s.L = substitute(s.L0, s.L0.index_of("p0"), s["p"], s.S, "p", s.cloud.get());

        double worst = 0.0;
        for (const Point& x : s.L.points)
                worst = std::max(worst, std::fabs(s.S.field(x)));
        R.at_most("landmarks_on_S", "the points of L remain on the deformed surface", worst, tol.on_surface,
                  float_tol(D));
        R.at_least("sparsity", "L is an (eps - delta)-sparse sample", s.L.sparsity, P.epsilon() - d,
                   float_tol(1));
        R.at_most("density", "L is a (2 eps + delta)-sample (up to the cloud spacing)", s.L.density,
                  2 * P.epsilon() + d + P.cloud_spacing, float_tol(1));
}

} // namespace

Scene build_scene_A(const SceneParams& p)
{
        p.validate();
        Scene s;
        s.params = p;
        s.named = scene_points(p);
        s.construction.title = "scene A construction";
        try {
                construction_A(s);
        } catch (const GeometryError& e) {
                s.aborted = true;
                s.construction.check("construction", "construction completes with all margins positive", false,
                                     e.what());
        }
        return s;
}

VerificationReport verify_scene_A(const Scene& s)
{
        const auto t0 = std::chrono::steady_clock::now();
        VerificationReport R;
        R.title = "scene A: restricted Delaunay complex is not a closed hypersurface";
        R.merge(s.construction, "build.");
        if (s.aborted) {
                R.seconds = seconds_since(t0);
                return R;
        }
        const SceneParams& P = s.params;
        const double D = P.Delta(), d = P.delta;
        const std::vector<Point>& L = s.L.points;

        // named points against closed forms
        {
                const auto ref = scene_points(P);
                double err = 0.0;
                for (const char* n : {"u", "v", "w", "p"})
                        err = std::max(err, dist(s.L[n], ref.at(n)));
                err = std::max(err, dist(s.L0["p0"], ref.at("p0")));
                R.at_most("named_points", "u, v, w, p, p0 at their stated coordinates", err, 1e-10, float_tol(D));
        }
        // c0 and its empty ball in L0
        {
                std::vector<Point> tet{s.L0["u"], s.L0["v"], s.L0["w"], s.L0["p0"]};
                Circumsphere cs = circumcenter(tet);
                R.at_most("c0_circumcenter", kAnchorC0, dist(cs.center, s["c0"]), 1e-9, float_tol(D));
                R.at_most("c0_radius2", "r0^2 = 1/2 + delta^2/4", std::fabs(cs.radius * cs.radius - (0.5 + d * d / 4)),
                          1e-12, float_tol(1));
                Simplex sig = make_simplex({0, 1, 2, s.L0.index_of("p0")});
                Ball b{s["c0"], dist(s["c0"], s["u"])};
                R.at_least("c0_ball_empty", "B(c0, r0) contains no point of L0 in its interior",
                           ball_clearance(s.L0.points, sig, b), 0.0, float_tol(D),
                           is_delaunay_simplex(s.L0.points, sig, b) ? "exact check: empty" : "exact check: occupied");
        }
        const Simplex tet = s.simplex({"u", "v", "w", "p"});
        const Point& c = s["c"];
        const double cp = dist(c, s.L["p"]), cu = dist(c, s.L["u"]);
        R.at_most("p_on_Bc", "||c - p|| = ||c - u||", std::fabs(cp - cu), 1e-12, float_tol(1));
        R.at_least("Bc_empty", "B_c contains no point of L other than p, u, v, w",
                   ball_clearance(L, tet, Ball{c, cu}), 0.0, float_tol(D),
                   is_delaunay_simplex(L, tet, Ball{c, cu}) ? "exact check: empty" : "exact check: occupied");
        {
                std::vector<Point> pts{s.L["u"], s.L["v"], s.L["w"], s.L["p"]};
                Circumsphere cs = circumcenter(pts);
                R.at_least("sliver_condition", "p lies close to the affine hull of [u, v, w]: condition exceeds 10/delta",
                           cs.condition, 10.0 / d, 0.0);
        }

        // the Voronoi edge e dual to [u,v,w,p] and its four incident 2-faces
        const Box box = manifold_box(s.S);
        VoronoiFace e = local_voronoi_face(L, tet, box);
        const Point ez = Point::unit(4, 2), et = Point::unit(4, 3);
        if (e.empty || e.dim != 1) {
                R.check("e_aligned", "e is aligned with (0, 0, 1, 0)", false, "dual edge is empty");
        } else {
                R.at_least("e_aligned", "e is aligned with (0, 0, 1, 0)", std::fabs(dot(e.flat.directions[0], ez)),
                           1.0 - 1e-12, 1e-15);
                R.at_most("e_through_c", "c lies on e", e.flat.distance(c), 1e-9, float_tol(D));
        }
        const double level = D + d / 2;
        const double bound = std::asin(std::sqrt(3.0) * P.mu / (1 - P.mu));
        int above = 0, below = 0;
        double worst_angle = 0.0;
        std::vector<Simplex> upper;
        for (const Simplex& tri : facets_of(tet)) {
                VoronoiFace f = local_voronoi_face(L, tri, box);
                if (f.empty || f.dim != 2)
                        continue;
                double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                for (const Point& x : f.vertices) {
                        lo = std::min(lo, x[3] - level);
                        hi = std::max(hi, x[3] - level);
                }
                const double slack = 1e-9 * D;
                if (lo >= -slack && hi > slack) {
                        ++above;
                        upper.push_back(tri);
                } else if (hi <= slack && lo < -slack) {
                        ++below;
                }
                auto ang = principal_angles(f.flat.directions, {ez, et});
                worst_angle = std::max(worst_angle, ang.back());
        }
        R.at_most("face_angles", "the 2-faces incident to e make angles of at most arcsin(mu sqrt3/(1 - mu)) with the (z, t)-plane",
                  worst_angle, bound + 1e-6, 1e-12);
        R.check("two_faces_above", "two of these faces lie above the hyperplane t = Delta + delta/2, two below",
                above == 2 && below == 2,
                "above " + std::to_string(above) + ", below " + std::to_string(below));
        const Simplex puv = s.simplex({"p", "u", "v"}), pvw = s.simplex({"p", "v", "w"});
        const bool upper_ok = std::find(upper.begin(), upper.end(), puv) != upper.end() &&
                              std::find(upper.begin(), upper.end(), pvw) != upper.end();
        R.check("upper_faces", "the faces above are dual to [p, u, v] and [p, v, w]", upper_ok);

        // those faces meet M only close to c
        const double rho_c = s.S.bumps()[find_bump(s.S, "c")].support_radius();
        const double r_eta = rho_c * std::sqrt(s.eta_effective / (2 * (1 + s.eta_effective)));
        {
                double far = 0.0;
                std::size_t n = 0;
                bool amb = false;
                for (const Simplex& tri : {puv, pvw}) {
                        LocalMembership lm = local_membership(L, tri, s.S, true);
                        amb = amb || lm.ambiguous;
                        n += lm.crossings.size();
                        for (const Point& x : lm.crossings)
                                far = std::max(far, dist(x, c));
                }
                R.at_most("upper_faces_meet_M_near_c", "the two faces above intersect M only in a small neighborhood of c",
                          n ? far : std::numeric_limits<double>::infinity(), 1.5 * r_eta + 1e-3 * D,
                          float_tol(D), std::to_string(n) + " crossings" + (amb ? ", ambiguous cells" : ""));
        }
        // membership of [u,v,w,p]
        {
                // c is the apex along e, where the field is stationary: start from the predicted crossing
                MembershipCertificate mc = restricted_membership_certificate(L, tet, s.S, c + ez * r_eta);
                R.check("tet_certified", "[u, v, w, p] belongs to Dels(L): M crosses e near c", mc.holds(),
                        to_string(mc.status) + ", evidence " + to_string(mc.evidence.point));
                LocalMembership lm = local_membership(L, tet, s.S);
                R.check("tet_member_search", "e intersects M (certified search on the dual edge)", lm.member,
                        lm.ambiguous ? "ambiguous" : "");
        }
        // each upper triangle has exactly one restricted coface
        {
                SimplicialComplex K(L);
                bool amb = false;
                std::string det;
                for (const Simplex& tri : {puv, pvw}) {
                        auto cof = restricted_cofaces(L, tri, s.S, &amb);
                        det += names(tri, s.L) + ": " + std::to_string(cof.size()) + " ";
                        R.check("single_coface_" + names(tri, s.L), "[p, u, v] and [p, v, w] are each incident to exactly one tetrahedron of Dels(L)",
                                cof.size() == 1 && cof[0] == tet && !amb, det);
                        for (const Simplex& t : cof)
                                K.insert(t);
                }
                PseudomanifoldCheck pm = is_closed_pseudomanifold(K, 3);
                const bool offends = std::find(pm.offenders.begin(), pm.offenders.end(), puv) != pm.offenders.end();
                R.check("not_closed", "Dels(L) is not a closed hypersurface", !pm.closed && offends,
                        std::to_string(pm.offenders.size()) + " boundary triangles in the local star");
        }
        curvature_claims(R, s.S, D / 2);

        if (P.mode == SceneMode::Full) {
                DelaunayTriangulation t = build_delaunay(L, P.seed);
                RestrictedComplex rc = build_restricted(t, s.S);
                R.check("full_contains_tet", "[u, v, w, p] belongs to the global restricted complex", rc.complex.contains(tet));
                PseudomanifoldCheck pm = is_closed_pseudomanifold(rc.complex, 3);
                R.check("full_not_closed", "the global restricted complex is not a closed 3-pseudomanifold", !pm.closed,
                        std::to_string(pm.offenders.size()) + " offending triangles, " +
                                std::to_string(rc.ambiguous.size()) + " ambiguous simplices");
        }
        R.seconds = seconds_since(t0);
        return R;
}

} // namespace rdel
