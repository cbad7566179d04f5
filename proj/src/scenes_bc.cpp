#include "rdel/scenes.hpp"

#include "scenes_internal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace rdel {

using namespace detail;

namespace {

double support_of(const ImplicitManifold& m, const std::string& name)
{
        const int id = find_bump(m, name);
        return id < 0 ? 0.0 : m.bumps()[id].support_radius();
}

Point drop_to_facet(const Point& x, double D)
{
        Point b = x;
        b[3] = D;
        return b;
}

double min_to_others(const LandmarkSet& L, const Point& x, const std::vector<int>& skip)
{
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < static_cast<int>(L.points.size()); ++i)
                if (std::find(skip.begin(), skip.end(), i) == skip.end())
                        best = std::min(best, dist(x, L.points[i]));
        return best;
}

void construction_B(Scene& s)
{
        const SceneParams& P = s.params;
        const double D = P.Delta(), d = P.delta;
        VerificationReport& R = s.construction;
        const std::vector<Point> fixed = s.L.points;

        // q rides on its own bump, disjoint from the bump of c
        const double rho_c = support_of(s.S, "c");
        const double gap_q = dist(s["q_base"], s["c0"]) - rho_c - 0.01;
        BumpOptions oq;
        oq.name = "q";
        oq.keep_fixed = fixed;
        oq.max_support = std::min(bump_support_for(d, D / 2), gap_q);
        ImplicitManifold Sp = add_bump(s.S, s["q_base"], d, oq);

        double qfar = std::numeric_limits<double>::infinity();
        for (const char* n : {"p", "u", "v", "w"})
                qfar = std::min(qfar, dist(s["q"], s.L[n]));
        R.at_least("q_far", "q lies farther than 1/2 from {p, u, v, w}", qfar, 0.5, float_tol(D));

        LandmarkSet L = insert_landmark(s.L, s["q"], Sp, "q", nullptr);
        auto protect = [&L] {
                std::vector<int> out;
                for (const char* n : {"p", "u", "v", "w", "q"})
                        out.push_back(L.index_of(n));
                return out;
        };

        // excisions: pentahedron ball, then the two balls centred on the lines e_puvq, e_pvwq
        std::vector<Point> penta{L["p"], L["u"], L["v"], L["w"], L["q"]};
        Circumsphere cs = circumcenter(penta);
        L = excise_ball(L, Ball{cs.center, cs.radius}, protect(), nullptr);
        for (const char* n : {"c_puvq", "c_pvwq"}) {
                const Point& x = s[n];
                L = excise_ball(L, Ball{x, dist(x, L["q"])}, protect(), nullptr);
        }

        // ridge through c_puvq and c_pvwq; falls back to a covering bump when the two lobes cannot be joined
        const Point& t1 = s["c_puvq"];
        const Point& t2 = s["c_pvwq"];
        const Point mid_base = drop_to_facet(0.5 * (t1 + t2), D);
        const double ridge_cap = std::max(0.05, dist(mid_base, s["c0"]) - rho_c - 0.01);
        BumpOptions orr;
        orr.name = "ridge";
        orr.keep_fixed = L.points;
        orr.max_support = ridge_cap;
        bool ridge_ok = true;
        std::string why;
        try {
                Sp = add_ridge_bump(Sp, t1, t2, orr);
        } catch (const GeometryError& e) {
                ridge_ok = false;
                why = e.what();
        }
        R.check("ridge_feasible", "a small ridge-shaped bump makes M pass through c_puvq and c_pvwq", ridge_ok,
                ridge_ok ? "" : why + "; replaced by a single bump covering both points");
        if (!ridge_ok) {
                const double h = std::max(t1[3], t2[3]) - D;
                Sp = add_bump(Sp, mid_base, h * (1.0 + s.eta_effective), orr);
        }
        s.Splus = Sp;

        // deflate c so that its top c'' sits below c by a quarter of the gap d_c - ||c - p||
        const Point& c = s["c"];
        const std::vector<int> sig{L.index_of("p"), L.index_of("u"), L.index_of("v"), L.index_of("w")};
        const double dc = min_to_others(L, c, sig);
        const double cp = dist(c, L["p"]);
        const double kappa = 0.25 * (dc - cp);
        const int ic = find_bump(Sp, "c");
        const double apex_now = Sp.bumps()[ic].max_apex(); // includes the inflation
        s.deflation = (d / 2 - kappa) / apex_now;
        R.at_least("dc_gap_positive", "d_c is greater than ||c - p||", dc - cp, 0.0, float_tol(D));
        s.Sminus = set_deflation(Sp, ic, s.deflation);

        double worst = 0.0;
        for (const Point& x : L.points)
                worst = std::max({worst, std::fabs(s.Splus.field(x)), std::fabs(s.Sminus.field(x))});
        R.at_most("landmarks_on_S_pm", "the points of L lie on S+ and S-", worst, tol.on_surface, float_tol(D));
        L.cloud_checksum = s.L.cloud_checksum;
        measure(L, *s.cloud);
        R.at_least("sparsity_B", "L stays Omega(eps)-sparse: q is farther than 1/2 from the rest", L.sparsity, 0.5 * P.epsilon(),
                   float_tol(1));
        Claim& dens = R.at_most("density_B", "L remains an O(eps)-sample; density constant after the excisions", L.density,
                                4 * P.epsilon(), float_tol(1));
        dens.decisive = false;
        s.L = std::move(L);
}

} // namespace

Scene build_scene_B(const Scene& a)
{
        Scene s = a;
        s.construction.title = "scene B construction";
        if (s.aborted)
                return s;
        try {
                construction_B(s);
        } catch (const GeometryError& e) {
                s.aborted = true;
                s.construction.check("construction", "construction completes with all margins positive", false,
                                     e.what());
        }
        return s;
}

Scene build_scene_B(const SceneParams& p) { return build_scene_B(build_scene_A(p)); }

namespace {

struct Membership {
        SimplicialComplex K;
        std::map<Simplex, bool> in;
        bool ambiguous = false;
};

Membership local_star(const std::vector<Point>& L, const std::vector<Simplex>& tops, const ImplicitManifold& m)
{
        Membership r;
        r.K = SimplicialComplex(L);
        std::set<Simplex> cand;
        for (const Simplex& t : tops)
                for (int k = 0; k < static_cast<int>(t.size()); ++k)
                        for (const Simplex& f : faces_of_dim(t, k))
                                cand.insert(f);
        for (const Simplex& f : cand) {
                bool in = true;
                if (f.size() > 1) {
                        LocalMembership lm = local_membership(L, f, m);
                        in = lm.member;
                        r.ambiguous = r.ambiguous || lm.ambiguous;
                }
                r.in[f] = in;
                if (in)
                        r.K.insert(f);
        }
        return r;
}

double hyperplane_angle(const std::vector<Point>& L, const Simplex& tet, const Box& box)
{
        VoronoiFace f = local_voronoi_face(L, tet, box);
        if (f.empty || f.dim != 1)
                return std::numeric_limits<double>::infinity();
        return std::asin(std::min(1.0, std::fabs(f.flat.directions[0][3])));
}

} // namespace

VerificationReport verify_scene_B(const Scene& s)
{
        const auto t0 = std::chrono::steady_clock::now();
        VerificationReport R;
        R.title = "scene B: restricted Delaunay complex is not homotopy equivalent to M";
        R.merge(s.construction, "build.");
        if (s.aborted) {
                R.seconds = seconds_since(t0);
                return R;
        }
        const SceneParams& P = s.params;
        const double D = P.Delta(), d = P.delta;
        const std::vector<Point>& L = s.L.points;

        {
                std::vector<Point> penta{s.L["p"], s.L["u"], s.L["v"], s.L["w"], s.L["q"]};
                Circumsphere cs = circumcenter(penta);
                R.at_most("pentahedron_center", "c' = (1/2, 1/2, +-delta^2/2, Delta + delta/2) is the circumcenter of [p, u, v, w, q]",
                          dist(cs.center, s["c_prime"]), 1e-9, float_tol(D));
                R.at_most("pentahedron_radius", "its circumradius r' is less than eps = 1", cs.radius, P.epsilon(),
                          float_tol(1));
                // the unmirrored q of the text
                SceneParams lit = P;
                lit.literal_q = true;
                const auto ref = scene_points(lit);
                std::vector<Point> pl{s.L["p"], s.L["u"], s.L["v"], s.L["w"], ref.at("q")};
                Circumsphere cl = circumcenter(pl);
                R.at_most("pentahedron_center_literal", "with q = ((1 + sqrt2)/2, 1/2, delta^2, Delta + delta): c' = (1/2, 1/2, delta^2/2, Delta + delta/2)",
                          dist(cl.center, ref.at("c_prime")), 1e-9, float_tol(D));
                R.at_most("pentahedron_radius_literal", "r' < 1 for the literal q", cl.radius, 1.0, float_tol(1));
        }
        const Box box = manifold_box(s.Splus);
        const Simplex puvq = s.simplex({"p", "u", "v", "q"}), pvwq = s.simplex({"p", "v", "w", "q"});
        const Simplex puvw = s.simplex({"p", "u", "v", "w"});
        for (auto [sig, name, other] : {std::tuple{puvq, "c_puvq", "w"}, std::tuple{pvwq, "c_pvwq", "u"}}) {
                const std::string tag = name + 2;
                R.at_most("angle_e_" + tag, "e_" + tag + " makes an angle of O(delta) with the hyperplane t = Delta + delta/2",
                          hyperplane_angle(L, sig, box), 10 * d, float_tol(1));
                const Point& x = s[name];
                double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
                for (int v : sig) {
                        lo = std::min(lo, dist(x, L[v]));
                        hi = std::max(hi, dist(x, L[v]));
                }
                R.at_most(std::string("equidistant_") + name, std::string(name) + " lies on the line aff(e_" + tag + ")",
                          hi - lo, 1e-9, float_tol(D));
                R.at_least(std::string("ball_empty_") + name, "the ball centred at " + std::string(name) + " through q contains no landmark",
                           ball_clearance(L, sig, Ball{x, dist(x, s.L["q"])}), 0.0, float_tol(D));
                R.at_least(std::string("excludes_") + other, std::string(other) + " lies outside that ball",
                           dist(x, s.L[other]) - hi, 0.0, float_tol(D));
        }
        {
                std::vector<Point> penta{s.L["p"], s.L["u"], s.L["v"], s.L["w"], s.L["q"]};
                Circumsphere cs = circumcenter(penta);
                Simplex all = make_simplex({s.L.index_of("p"), s.L.index_of("u"), s.L.index_of("v"), s.L.index_of("w"),
                                            s.L.index_of("q")});
                R.check("pentahedron_ball_empty", "the ball B(c', r') contains no point of L in its interior",
                        is_delaunay_simplex(L, all, Ball{cs.center, cs.radius}));
        }

        const std::vector<Simplex> tops{puvw, puvq, pvwq};
        Membership plus = local_star(L, tops, s.Splus), minus = local_star(L, tops, s.Sminus);
        R.check("no_ambiguity", "membership decided for every simplex of the local star",
                !plus.ambiguous && !minus.ambiguous);
        R.check("tet_in_plus", "[p, u, v, w] belongs to Dels_S+(L)", plus.in[puvw]);
        R.check("tet_not_in_minus", "[p, u, v, w] does not belong to Dels_S-(L)", !minus.in[puvw],
                minus.in[puvw] ? "the dual edge e still crosses S-" : "");
        R.check("side_tets_in_both", "[p, u, v, q] and [p, v, w, q] belong to both complexes",
                plus.in[puvq] && plus.in[pvwq] && minus.in[puvq] && minus.in[pvwq]);
        R.check("lower_triangles_in_minus", "the two triangles [p, u, w] and [u, v, w] remain in Dels_S-(L)",
                minus.in[s.simplex({"p", "u", "w"})] && minus.in[s.simplex({"u", "v", "w"})]);
        ComplexDiff diff = complex_diff(plus.K, minus.K);
        std::string dd;
        for (const Simplex& x : diff.only_in_a)
                dd += "+" + names(x, s.L) + " ";
        for (const Simplex& x : diff.only_in_b)
                dd += "-" + names(x, s.L) + " ";
        R.check("diff_is_tet", "the two complexes differ exactly by [p, u, v, w]; its facets belong to both",
                diff.only_in_b.empty() && diff.only_in_a.size() == 1 && diff.only_in_a[0] == puvw,
                dd.empty() ? "no difference" : dd);
        const long dchi = euler_characteristic(plus.K) - euler_characteristic(minus.K);
        R.check("local_chi_difference", "chi(Dels+) = chi(Dels-) - 1 on the local star", dchi == -1,
                "chi+ - chi- = " + std::to_string(dchi));

        if (P.mode == SceneMode::Full) {
                DelaunayTriangulation t = build_delaunay(L, P.seed);
                RestrictedComplex rp = build_restricted(t, s.Splus), rm = build_restricted(t, s.Sminus);
                const long g = euler_characteristic(rp.complex) - euler_characteristic(rm.complex);
                R.check("global_chi_difference", "chi(Dels+) = chi(Dels-) - 1", g == -1, "difference " + std::to_string(g));
                auto bp = betti_numbers_mod2(rp.complex), bm = betti_numbers_mod2(rm.complex);
                const std::vector<long> sphere{1, 0, 0, 1};
                auto str = [](const std::vector<long>& b) {
                        std::string o;
                        for (long x : b)
                                o += std::to_string(x) + " ";
                        return o;
                };
                R.check("betti_differ", "at least one complex is not homotopy equivalent to the 3-sphere",
                        bp != bm && (bp != sphere || bm != sphere), "Betti+ " + str(bp) + "Betti- " + str(bm));
        }
        curvature_claims(R, s.Splus, D / 2);
        R.seconds = seconds_since(t0);
        return R;
}

// ---------------------------------------------------------------- scene C

Cloud facet_patch_cloud(const ImplicitManifold& m, const Point& center, double radius, double spacing,
                        std::uint64_t seed)
{
        if (m.base().kind != BaseKind::Hypercube)
                throw GeometryError("facet_patch_cloud: needs a hypercube base");
        const int d = m.dim();
        const double D = m.base().delta, a = D / 2;
        int axis = 0;
        for (int i = 1; i < d; ++i)
                if (std::fabs(center[i]) > std::fabs(center[axis]))
                        axis = i;
        for (int i = 0; i < d; ++i)
                if (i != axis && std::fabs(center[i]) + radius > a)
                        throw GeometryError("facet_patch_cloud: patch leaves the flat facet");
        const double level = center[axis] > 0 ? D : -D;
        const int k = d - 1;
        const double h = 2.0 * spacing / (std::sqrt(double(k)) * 1.2);
        const int n = static_cast<int>(std::ceil(radius / h));
        if (std::pow(2.0 * n + 1, k) > double(kMaxCloudPoints))
                throw GeometryError("facet_patch_cloud: too many points");
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> jit(-0.1 * h, 0.1 * h);
        std::vector<int> others;
        for (int i = 0; i < d; ++i)
                if (i != axis)
                        others.push_back(i);
        Cloud c;
        c.spacing = spacing;
        c.seed = seed;
        c.covering_bound = spacing;
        std::vector<int> idx(k, -n);
        while (true) {
                Point x(d);
                x[axis] = level;
                double r2 = 0.0;
                for (int j = 0; j < k; ++j) {
                        const double off = idx[j] * h + jit(rng);
                        x[others[j]] = center[others[j]] + off;
                        r2 += off * off;
                }
                if (r2 <= radius * radius) {
                        Point y = m.bumps().empty() ? x : m.project(x);
                        if (std::fabs(m.field(y)) > tol.on_surface)
                                throw GeometryError("facet_patch_cloud: projection failed");
                        c.points.push_back(y);
                }
                int j = 0;
                while (j < k && ++idx[j] > n)
                        idx[j++] = -n;
                if (j == k)
                        break;
        }
        c.checksum = checksum(c.points);
        return c;
}

namespace {

void construction_C(Scene& s)
{
        const SceneParams& P = s.params;
        const double D = P.Delta();
        VerificationReport& R = s.construction;
        LandmarkSet L = s.L;
        const Point& c = s["c"];
        const std::vector<int> sig{L.index_of("p"), L.index_of("u"), L.index_of("v"), L.index_of("w")};
        const double gap = min_to_others(L, c, sig) - dist(c, L["p"]);
        // jitter far below the gap so c stays off the endpoints of e
        const double mag = std::min(1e-6 * P.epsilon(), 1e-2 * gap);
        std::mt19937_64 rng(P.seed ^ 0x9e3779b97f4a7c15ULL);
        std::normal_distribution<double> g(0.0, 1.0);
        for (int i = 0; i < static_cast<int>(L.points.size()); ++i) {
                Point dir(4);
                for (int j = 0; j < 4; ++j)
                        dir[j] = g(rng);
                if (std::find(sig.begin(), sig.end(), i) != sig.end())
                        continue;
                L.points[i] = s.Sminus.project(L.points[i] + normalized(dir) * mag);
        }
        L.history.push_back("jitter of magnitude " + std::to_string(mag) + " on L minus {p,u,v,w}");
        L.sparsity = min_pairwise_distance(L.points);
        Claim& j = R.at_most("jitter_magnitude", "perturbation of L \\ {p, u, v, w} is infinitesimal", mag, 1e-6 * P.epsilon(),
                             0.0, "magnitude " + std::to_string(mag));
        j.decisive = false;
        double worst = 0.0;
        for (const Point& x : L.points)
                worst = std::max(worst, std::fabs(s.Sminus.field(x)));
        R.at_most("landmarks_on_S_minus", "perturbed landmarks lie on S-", worst, tol.on_surface, float_tol(D));
        s.L = std::move(L);

        const int ic = find_bump(s.Sminus, "c");
        const Bump& b = s.Sminus.bumps()[ic];
        Point top = s["c0"];
        top[3] += b.max_apex();
        s.named["c2"] = top;
}

} // namespace

Scene build_scene_C(const Scene& b)
{
        Scene s = b;
        s.construction.title = "scene C construction";
        if (s.aborted)
                return s;
        try {
                construction_C(s);
        } catch (const GeometryError& e) {
                s.aborted = true;
                s.construction.check("construction", "construction completes with all margins positive", false,
                                     e.what());
        }
        return s;
}

Scene build_scene_C(const SceneParams& p) { return build_scene_C(build_scene_B(p)); }

namespace {

// The face pulled inward by margin from every landmark bisector (box sides untouched).
VoronoiFace shrink_face(const VoronoiFace& f, double margin)
{
        VoronoiFace g = f;
        std::vector<ParamHalfSpace> phs;
        double r2 = 0.0;
        for (HalfSpace& h : g.halfspaces) {
                if (h.label >= 0)
                        h.offset -= margin * norm(h.normal);
                else
                        r2 += h.offset * h.offset / 2;
                ParamHalfSpace p;
                for (int j = 0; j < g.dim; ++j)
                        p.n[j] = dot(h.normal, g.flat.directions[j]);
                p.b = h.offset;
                p.label = h.label;
                phs.push_back(p);
        }
        g.polytope = clip_cube(g.dim, std::sqrt(2 * r2) * 1.01 + 1.0, phs);
        g.empty = g.polytope.empty;
        g.vertices.clear();
        for (const auto& v : g.polytope.vertices)
                g.vertices.push_back(g.ambient(v));
        return g;
}

// One evidence point per face of sigma of dimension >= 1, plus the vertices.
std::vector<Point> face_evidence(const std::vector<Point>& L, const Simplex& sigma, const ImplicitManifold& m, int k,
                                 std::vector<MandatedFacet>* facets)
{
        std::vector<Point> out;
        for (const Simplex& f : faces_of_dim(sigma, k)) {
                // crossings near the face boundary can lose exact ties: search a slightly shrunken face first
                MandatedFacet mf{f, std::nullopt};
                VoronoiFace face = local_voronoi_face(L, f, manifold_box(m));
                IntersectionOptions opt;
                opt.first_only = true;
                // the upper faces are slivers about delta^2 wide, hence the range of margins
                for (double margin : {1e-6, 1e-8, 1e-10, 0.0}) {
                        if (face.empty)
                                break;
                        IntersectionResult r = face_surface_intersections(margin > 0 ? shrink_face(face, margin) : face, m, opt);
                        if (r.points.empty())
                                continue;
                        const Point& y = r.points.front();
                        double far = 0.0, near = std::numeric_limits<double>::infinity();
                        for (int i = 0; i < static_cast<int>(L.size()); ++i)
                                if (std::binary_search(f.begin(), f.end(), i))
                                        far = std::max(far, dist(y, L[i]));
                                else
                                        near = std::min(near, dist(y, L[i]));
                        mf.evidence = Evidence{y, far, near - far};
                        if (witnesses_simplex(y, f, L))
                                break;
                }
                if (mf.evidence)
                        out.push_back(mf.evidence->point);
                if (facets)
                        facets->push_back(mf);
        }
        return out;
}

std::vector<Simplex> missing_faces(const SimplicialComplex& K, const Simplex& s)
{
        std::vector<Simplex> out;
        for (int k = 0; k < static_cast<int>(s.size()); ++k)
                for (const Simplex& f : faces_of_dim(s, k))
                        if (!K.contains(f))
                                out.push_back(f);
        return out;
}

std::string list(const std::vector<Simplex>& v, const LandmarkSet& L)
{
        std::string o;
        for (const Simplex& x : v)
                o += names(x, L) + " ";
        return o.empty() ? "none missing" : "missing " + o;
}

} // namespace

VerificationReport verify_scene_C(const Scene& s, const std::vector<double>& nus)
{
        const auto t0 = std::chrono::steady_clock::now();
        VerificationReport R;
        R.title = "scene C: the witness complex is not included in the restricted Delaunay complex";
        R.merge(s.construction, "build.");
        if (s.aborted) {
                R.seconds = seconds_since(t0);
                return R;
        }
        const SceneParams& P = s.params;
        const double D = P.Delta();
        const std::vector<Point>& L = s.L.points;
        const Simplex sigma = s.simplex({"p", "u", "v", "w"});
        const Point& c = s["c"];
        const Point& c2 = s["c2"];
        const int ip = s.L.index_of("p");

        const double dc = min_to_others(s.L, c, sigma);
        const double cp = dist(c, L[ip]);
        R.at_least("dc_exceeds_cp", "d_c is greater than ||c - p||", dc - cp, 0.0, float_tol(D));
        R.at_most("c2_close_to_c", "||c - c''|| < (d_c - ||c - p||)/2", dist(c, c2), 0.5 * (dc - cp), float_tol(D));
        R.at_most("c2_on_S_minus", "c'' lies on S-", std::fabs(s.Sminus.field(c2)), tol.on_surface, float_tol(D));
        {
                // exact scan: every landmark outside sigma is strictly farther from c'' than p
                int inside = 0;
                for (int i = 0; i < static_cast<int>(L.size()); ++i)
                        if (!std::binary_search(sigma.begin(), sigma.end(), i) && compare_distance(c2, L[i], L[ip]) <= 0)
                                ++inside;
                bool p_far = true;
                for (int v : sigma)
                        p_far = p_far && compare_distance(c2, L[v], L[ip]) <= 0;
                R.check("c2_ball_empty", "B(c'', ||c'' - p||) contains no point of L \\ {p, u, v, w}", inside == 0,
                        std::to_string(inside) + " landmarks on or inside (exact)");
                R.check("p_farthest_from_c2", "p is the vertex of [p, u, v, w] farthest from c''", p_far);
                R.check("c2_witnesses_tet", "c'' witnesses [p, u, v, w]", witnesses_simplex(c2, sigma, L));
        }

        // mandated facet witnesses on S-
        std::vector<MandatedFacet> facets;
        std::vector<Point> facet_pts = face_evidence(L, sigma, s.Sminus, 2, &facets);
        int facet_ok = 0;
        for (const MandatedFacet& f : facets)
                if (f.evidence && witnesses_simplex(f.evidence->point, f.facet, L))
                        ++facet_ok;
        R.check("facet_witnesses", "W contains a point of S- in the dual of each facet, which witnesses it", facet_ok == 4,
                std::to_string(facet_ok) + " of 4");

        LocalMembership rm = local_membership(L, sigma, s.Sminus);
        R.check("tet_not_in_Dels_minus", "[p, u, v, w] does not belong to Dels_S-(L)", !rm.member && !rm.ambiguous,
                rm.member ? "e crosses S- at " + to_string(rm.crossings.front()) : "");

        // variant b: explicit finite W (faces' evidence, the vertices and c'')
        std::vector<Point> lower = face_evidence(L, sigma, s.Sminus, 1, nullptr);
        std::vector<Point> vertices;
        for (int v : sigma)
                vertices.push_back(L[v]);
        {
                std::vector<Point> pts = vertices;
                pts.insert(pts.end(), lower.begin(), lower.end());
                pts.insert(pts.end(), facet_pts.begin(), facet_pts.end());
                pts.push_back(c2);
                WitnessComplex wc = build_witness_complex(L, explicit_witnesses(pts), 3);
                auto miss = missing_faces(wc.complex, sigma);
                R.check("witness_explicit", "[p, u, v, w] and all its faces belong to W_W(L), explicit finite W",
                        miss.empty(), std::to_string(pts.size()) + " witnesses, " + list(miss, s.L));
                std::vector<Point> no_facets = vertices;
                no_facets.insert(no_facets.end(), lower.begin(), lower.end());
                no_facets.push_back(c2);
                WitnessComplex wn = build_witness_complex(L, explicit_witnesses(no_facets), 3);
                Claim& n = R.check("control_without_facet_witnesses", "without the facet witnesses some facet is unwitnessed and the tetrahedron is excluded",
                                   !wn.complex.contains(sigma));
                n.decisive = false;
        }

        // variant a: dense cloud on the patch where witnesses of faces of sigma can lie
        const double reach = P.reach();
        const double a = D / 2;
        double lim = a;
        for (int i = 0; i < 3; ++i)
                lim = std::min(lim, a - std::fabs(c[i]));
        for (double nu : nus) {
                const auto t1 = std::chrono::steady_clock::now();
                const double dw = nu * reach;
                const double radius = std::min(lim - 1e-3, s.L.density + cp + 2 * dw);
                Cloud patch = facet_patch_cloud(s.Sminus, c, radius, dw, P.seed + 17);
                // floating evidence points lose the exact ties that make a facet witness its edges,
                // so edge evidence and the vertices are mandated as well
                std::vector<Point> extra = vertices;
                extra.insert(extra.end(), lower.begin(), lower.end());
                std::vector<Point> with_c2 = extra;
                with_c2.push_back(c2);
                WitnessSet W = mandate_witnesses(witnesses_from_cloud(patch), s.Sminus, facets, with_c2);
                WitnessComplex wc = build_witness_complex(L, W, 3);
                char tag[32];
                std::snprintf(tag, sizeof tag, "nu=%g", nu);
                auto miss = missing_faces(wc.complex, sigma);
                R.check(std::string("witness_cloud_") + tag, "[p, u, v, w] and all its faces belong to W_W(L), dense finite W",
                        miss.empty(),
                        std::to_string(W.points.size()) + " witnesses, patch radius " + std::to_string(radius) + ", " +
                                std::to_string(seconds_since(t1)) + " s, " + list(miss, s.L));
                WitnessSet Wn = mandate_witnesses(witnesses_from_cloud(patch), s.Sminus, facets, extra);
                WitnessComplex wn = build_witness_complex(L, Wn, 3);
                std::string who;
                if (auto it = wn.witness_of.find(sigma); it != wn.witness_of.end())
                        who = "still witnessed by " +
                              std::string(it->second < static_cast<int>(patch.points.size()) ? "cloud point " : "mandated point ") +
                              to_string(Wn.points[it->second]);
                Claim& n = R.check(std::string("control_without_c2_") + tag, "removing c'' from W removes [p, u, v, w]",
                                   !wn.complex.contains(sigma), who);
                n.decisive = false;
        }
        R.seconds = seconds_since(t0);
        return R;
}

WitnessSet scene_C_witnesses(const Scene& s)
{
        const std::vector<Point>& L = s.L.points;
        const Simplex sigma = s.simplex({"p", "u", "v", "w"});
        std::vector<Point> pts;
        for (int v : sigma)
                pts.push_back(L[v]);
        for (int k : {1, 2}) {
                std::vector<Point> e = face_evidence(L, sigma, s.Sminus, k, nullptr);
                pts.insert(pts.end(), e.begin(), e.end());
        }
        pts.push_back(s["c2"]);
        WitnessSet w = explicit_witnesses(std::move(pts));
        w.notes.push_back("vertices, edge and facet evidence on S-, c''");
        return w;
}

} // namespace rdel
