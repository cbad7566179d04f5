#include "rdel/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace rdel::io {

namespace {

Point point_from(const json& j)
{
        std::vector<double> c = j.get<std::vector<double>>();
        return Point::from(c);
}

json simplex_json(const Simplex& s) { return json(std::vector<int>(s.begin(), s.end())); }

// FNV-1a over raw bytes
struct Hasher {
        std::uint64_t h = 1469598103934665603ULL;
        void bytes(const void* p, std::size_t n)
        {
                auto* c = static_cast<const unsigned char*>(p);
                for (std::size_t i = 0; i < n; ++i) {
                        h ^= c[i];
                        h *= 1099511628211ULL;
                }
        }
        template <class T>
        void value(T v) { bytes(&v, sizeof v); }
};

BaseKind kind_from(const std::string& s)
{
        if (s == "hypercube")
                return BaseKind::Hypercube;
        if (s == "sphere")
                return BaseKind::Sphere;
        if (s == "torus")
                return BaseKind::Torus;
        throw GeometryError("unknown base shape: " + s);
}

const char* kind_name(BaseKind k)
{
        switch (k) {
        case BaseKind::Hypercube: return "hypercube";
        case BaseKind::Sphere: return "sphere";
        case BaseKind::Torus: return "torus";
        }
        return "?";
}

} // namespace

const char* axis_name(int i)
{
        static const char* n[] = {"x", "y", "z", "t", "x4", "x5", "x6", "x7"};
        return i >= 0 && i < 8 ? n[i] : "?";
}

json points_to_json(const std::vector<Point>& pts)
{
        json a = json::array();
        for (const Point& p : pts)
                a.push_back(p.to_vector());
        return a;
}

std::vector<Point> points_from_json(const json& j)
{
        std::vector<Point> out;
        out.reserve(j.size());
        for (const json& p : j)
                out.push_back(point_from(p));
        return out;
}

json complex_to_json(const SimplicialComplex& k)
{
        json j;
        j["dimension"] = k.dimension();
        j["vertices"] = points_to_json(k.vertex_coords());
        json s = json::object();
        for (int d = 0; d <= k.dimension(); ++d) {
                json list = json::array();
                for (const Simplex& x : k.simplices(d))
                        list.push_back(simplex_json(x));
                s[std::to_string(d)] = std::move(list);
        }
        j["simplices"] = std::move(s);
        return j;
}

SimplicialComplex complex_from_json(const json& j)
{
        SimplicialComplex k(points_from_json(j.at("vertices")));
        for (const auto& [d, list] : j.at("simplices").items())
                for (const json& s : list)
                        k.insert(make_simplex(s.get<std::vector<int>>()));
        if (k.dimension() != j.at("dimension").get<int>())
                throw GeometryError("complex JSON: dimension field disagrees with the simplices");
        return k;
}

std::uint64_t complex_checksum(const SimplicialComplex& k)
{
        Hasher h;
        for (const Point& p : k.vertex_coords())
                for (int i = 0; i < p.dim(); ++i)
                        h.value(p[i]);
        for (int d = 0; d <= k.dimension(); ++d) {
                h.value(static_cast<std::int64_t>(-1 - d));
                for (const Simplex& s : k.simplices(d))
                        for (int v : s)
                                h.value(static_cast<std::int32_t>(v));
        }
        return h.h;
}

json restricted_to_json(const RestrictedComplex& r)
{
        json j = complex_to_json(r.complex);
        json ev = json::array();
        for (const auto& [s, e] : r.evidence)
                ev.push_back({{"simplex", simplex_json(s)},
                              {"point", e.point.to_vector()},
                              {"radius", e.radius},
                              {"margin", e.margin}});
        j["evidence"] = std::move(ev);
        json amb = json::array();
        for (const Simplex& s : r.ambiguous)
                amb.push_back(simplex_json(s));
        j["ambiguous"] = std::move(amb);
        return j;
}

RestrictedComplex restricted_from_json(const json& j)
{
        RestrictedComplex r;
        r.complex = complex_from_json(j);
        for (const json& e : j.value("evidence", json::array()))
                r.evidence[make_simplex(e.at("simplex").get<std::vector<int>>())] =
                        Evidence{point_from(e.at("point")), e.at("radius").get<double>(), e.at("margin").get<double>()};
        for (const json& s : j.value("ambiguous", json::array()))
                r.ambiguous.push_back(make_simplex(s.get<std::vector<int>>()));
        return r;
}

json witness_complex_to_json(const WitnessComplex& wc, const WitnessSet& w)
{
        json j = complex_to_json(wc.complex);
        json prov = json::array();
        for (const auto& [s, i] : wc.witness_of) {
                json row{{"simplex", simplex_json(s)}, {"witness", i}};
                if (i >= 0 && i < static_cast<int>(w.points.size()))
                        row["point"] = w.points[i].to_vector();
                prov.push_back(std::move(row));
        }
        j["witness_of"] = std::move(prov);
        j["witness_source"] = w.source;
        j["witness_count"] = w.points.size();
        return j;
}

json witnesses_to_json(const WitnessSet& w)
{
        return {{"source", w.source}, {"delta", w.delta}, {"notes", w.notes}, {"points", points_to_json(w.points)},
                {"checksum", checksum(w.points)}};
}

WitnessSet witnesses_from_json(const json& j)
{
        WitnessSet w;
        w.source = j.at("source").get<std::string>();
        w.delta = j.at("delta").get<double>();
        w.notes = j.at("notes").get<std::vector<std::string>>();
        w.points = points_from_json(j.at("points"));
        return w;
}

json landmarks_to_json(const LandmarkSet& L)
{
        json named = json::object();
        for (const auto& [n, i] : L.named)
                named[n] = i;
        return {{"epsilon", L.epsilon},
                {"sparsity", L.sparsity},
                {"density", L.density},
                {"farthest_cloud_index", L.farthest_cloud_index},
                {"seeds", points_to_json(L.seeds)},
                {"cloud_checksum", L.cloud_checksum},
                {"history", L.history},
                {"named", named},
                {"points", points_to_json(L.points)},
                {"checksum", checksum(L.points)}};
}

LandmarkSet landmarks_from_json(const json& j)
{
        LandmarkSet L;
        L.epsilon = j.at("epsilon").get<double>();
        L.sparsity = j.at("sparsity").get<double>();
        L.density = j.at("density").get<double>();
        L.farthest_cloud_index = j.at("farthest_cloud_index").get<int>();
        L.seeds = points_from_json(j.at("seeds"));
        L.cloud_checksum = j.at("cloud_checksum").get<std::uint64_t>();
        L.history = j.at("history").get<std::vector<std::string>>();
        for (const auto& [n, i] : j.at("named").items())
                L.named[n] = i.get<int>();
        L.points = points_from_json(j.at("points"));
        if (j.contains("checksum") && j["checksum"].get<std::uint64_t>() != checksum(L.points))
                throw GeometryError("landmark JSON: checksum mismatch");
        return L;
}

json manifold_to_json(const ImplicitManifold& m)
{
        const BaseShape& b = m.base();
        json base{{"kind", kind_name(b.kind)}, {"d", b.d}};
        switch (b.kind) {
        case BaseKind::Hypercube: base["delta"] = b.delta; break;
        case BaseKind::Sphere:
                base["center"] = b.center.to_vector();
                base["radius"] = b.radius;
                break;
        case BaseKind::Torus:
                base["major"] = b.major;
                base["minor"] = b.minor;
                break;
        }
        json bumps = json::array();
        for (const Bump& u : m.bumps()) {
                json lobes = json::array();
                for (const Lobe& l : u.lobes)
                        lobes.push_back({{"center", l.center.to_vector()}, {"apex", l.apex}, {"support", l.support}});
                bumps.push_back({{"name", u.name},
                                 {"axis", u.axis.to_vector()},
                                 {"scale", u.scale},
                                 {"gate", u.gate},
                                 {"capped", u.capped},
                                 {"lobes", lobes}});
        }
        return {{"base", base}, {"bumps", bumps}};
}

ImplicitManifold manifold_from_json(const json& j)
{
        const json& b = j.at("base");
        const BaseKind kind = kind_from(b.at("kind").get<std::string>());
        ImplicitManifold m = kind == BaseKind::Hypercube
                                     ? ImplicitManifold::hypercube(b.at("d").get<int>(), b.at("delta").get<double>())
                             : kind == BaseKind::Sphere
                                     ? ImplicitManifold::sphere(point_from(b.at("center")), b.at("radius").get<double>())
                                     : ImplicitManifold::torus(b.at("major").get<double>(), b.at("minor").get<double>());
        for (const json& u : j.at("bumps")) {
                Bump bump;
                bump.name = u.at("name").get<std::string>();
                bump.axis = point_from(u.at("axis"));
                bump.scale = u.at("scale").get<double>();
                bump.gate = u.at("gate").get<double>();
                bump.capped = u.at("capped").get<bool>();
                for (const json& l : u.at("lobes"))
                        bump.lobes.push_back(
                                Lobe{point_from(l.at("center")), l.at("apex").get<double>(), l.at("support").get<double>()});
                m.bumps_mut().push_back(std::move(bump));
        }
        return m;
}

json report_to_json(const VerificationReport& r)
{
        json claims = json::array();
        for (const Claim& c : r.claims)
                claims.push_back({{"id", c.id},
                                  {"anchor", c.anchor},
                                  {"pass", c.pass},
                                  {"warning", c.warning},
                                  {"decisive", c.decisive},
                                  {"measured", c.measured},
                                  {"threshold", c.threshold},
                                  {"margin", c.margin},
                                  {"tolerance", c.tolerance},
                                  {"detail", c.detail}});
        return {{"title", r.title}, {"overall", r.overall()}, {"claims", claims}};
}

std::string to_off(const SimplicialComplex& k, std::array<int, 3> axes)
{
        std::vector<Simplex> faces;
        if (k.dimension() >= 2) {
                std::set<Simplex> tri(k.simplices(2));
                faces.assign(tri.begin(), tri.end());
        } else if (k.dimension() == 1) {
                const auto& e = k.simplices(1);
                faces.assign(e.begin(), e.end());
        }
        const auto& V = k.vertex_coords();
        std::ostringstream os;
        os.precision(17);
        os << "OFF\n" << V.size() << " " << faces.size() << " 0\n";
        for (const Point& p : V) {
                for (int i = 0; i < 3; ++i)
                        os << (i ? " " : "") << (axes[i] < p.dim() ? p[axes[i]] : 0.0);
                os << "\n";
        }
        for (const Simplex& f : faces) {
                os << f.size();
                for (int v : f)
                        os << " " << v;
                os << "\n";
        }
        return os.str();
}

SliceSpec parse_slice(const std::string& spec, int d)
{
        SliceSpec s;
        s.origin = Point::zero(d);
        std::vector<bool> fixed(d, false);
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
                const auto eq = item.find('=');
                if (eq == std::string::npos)
                        throw GeometryError("slice: expected axis=value, got '" + item + "'");
                const std::string name = item.substr(0, eq);
                int axis = -1;
                for (int i = 0; i < d; ++i)
                        if (name == axis_name(i))
                                axis = i;
                if (axis < 0)
                        throw GeometryError("slice: unknown axis '" + name + "'");
                s.origin[axis] = std::stod(item.substr(eq + 1));
                fixed[axis] = true;
        }
        std::vector<int> free;
        for (int i = 0; i < d; ++i)
                if (!fixed[i])
                        free.push_back(i);
        if (free.size() != 2)
                throw GeometryError("slice: exactly two axes must stay free");
        s.a = free[0];
        s.b = free[1];
        return s;
}

std::string field_slice_csv(const ImplicitManifold& m, const SliceSpec& s)
{
        if (s.na < 2 || s.nb < 2)
                throw GeometryError("slice: need at least 2 samples per axis");
        std::ostringstream os;
        os.precision(12);
        os << axis_name(s.a) << "," << axis_name(s.b) << ",field\n";
        Point x = s.origin;
        for (int i = 0; i < s.na; ++i) {
                x[s.a] = s.a0 + (s.a1 - s.a0) * i / (s.na - 1);
                for (int k = 0; k < s.nb; ++k) {
                        x[s.b] = s.b0 + (s.b1 - s.b0) * k / (s.nb - 1);
                        os << x[s.a] << "," << x[s.b] << "," << m.field(x) << "\n";
                }
        }
        return os.str();
}

std::string points_csv(const std::vector<Point>& pts, const std::vector<std::string>& labels)
{
        std::ostringstream os;
        os.precision(17);
        const int d = pts.empty() ? 0 : pts[0].dim();
        for (int i = 0; i < d; ++i)
                os << (i ? "," : "") << axis_name(i);
        if (!labels.empty())
                os << ",label";
        os << "\n";
        for (std::size_t n = 0; n < pts.size(); ++n) {
                for (int i = 0; i < d; ++i)
                        os << (i ? "," : "") << pts[n][i];
                if (!labels.empty())
                        os << "," << (n < labels.size() ? labels[n] : "");
                os << "\n";
        }
        return os.str();
}

} // namespace rdel::io
