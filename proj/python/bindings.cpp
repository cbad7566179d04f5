// Python bindings: scenes and reports, plus the geometric building blocks on plain lists of coordinates.
#include "rdel/io.hpp"
#include "rdel/scenes.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rdel;

namespace {

using Coords = std::vector<std::vector<double>>;

std::vector<Point> points(const Coords& c)
{
        std::vector<Point> out;
        out.reserve(c.size());
        for (const auto& x : c)
                out.push_back(Point::from(x));
        return out;
}

Coords coords(const std::vector<Point>& pts)
{
        Coords out;
        out.reserve(pts.size());
        for (const Point& p : pts)
                out.push_back(p.to_vector());
        return out;
}

std::map<int, std::vector<Simplex>> by_dim(const SimplicialComplex& k)
{
        std::map<int, std::vector<Simplex>> out;
        for (int d = 0; d <= k.dimension(); ++d)
                out[d].assign(k.simplices(d).begin(), k.simplices(d).end());
        return out;
}

SimplicialComplex from_simplices(const std::vector<Simplex>& s)
{
        SimplicialComplex k;
        for (const Simplex& x : s)
                k.insert(make_simplex(x));
        return k;
}

Scene scene(const std::string& name, const SceneParams& p)
{
        if (name == "A")
                return build_scene_A(p);
        if (name == "B")
                return build_scene_B(p);
        if (name == "C")
                return build_scene_C(p);
        throw py::value_error("scene must be A, B or C");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
        m.doc() = "Restricted Delaunay and witness complexes: counter-example scenes and building blocks";

        py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);

        py::class_<SceneParams>(m, "SceneParams")
                .def(py::init<>())
                .def_readwrite("mu", &SceneParams::mu)
                .def_readwrite("delta", &SceneParams::delta)
                .def_readwrite("eta", &SceneParams::eta)
                .def_readwrite("nu", &SceneParams::nu)
                .def_readwrite("cloud_spacing", &SceneParams::cloud_spacing)
                .def_readwrite("seed", &SceneParams::seed)
                .def_readwrite("literal_q", &SceneParams::literal_q)
                .def_property(
                        "full", [](const SceneParams& p) { return p.mode == SceneMode::Full; },
                        [](SceneParams& p, bool f) { p.mode = f ? SceneMode::Full : SceneMode::Local; })
                .def_property_readonly("Delta", &SceneParams::Delta)
                .def_property_readonly("reach", &SceneParams::reach)
                .def("validate", &SceneParams::validate);

        py::class_<Claim>(m, "Claim")
                .def_readonly("id", &Claim::id)
                .def_readonly("anchor", &Claim::anchor)
                .def_readonly("measured", &Claim::measured)
                .def_readonly("threshold", &Claim::threshold)
                .def_readonly("margin", &Claim::margin)
                .def_readonly("tolerance", &Claim::tolerance)
                .def_readonly("passed", &Claim::pass)
                .def_readonly("warning", &Claim::warning)
                .def_readonly("decisive", &Claim::decisive)
                .def_readonly("detail", &Claim::detail)
                .def("__repr__", [](const Claim& c) { return "<Claim " + c.id + (c.pass ? " pass>" : " FAIL>"); });

        py::class_<VerificationReport>(m, "Report")
                .def_readonly("title", &VerificationReport::title)
                .def_readonly("claims", &VerificationReport::claims)
                .def_readonly("seconds", &VerificationReport::seconds)
                .def("overall", &VerificationReport::overall)
                .def("find", &VerificationReport::find, py::return_value_policy::reference_internal)
                .def("text", &VerificationReport::text)
                .def("to_json", [](const VerificationReport& r) { return io::report_to_json(r).dump(); });

        py::class_<Scene>(m, "Scene")
                .def_readonly("params", &Scene::params)
                .def_readonly("aborted", &Scene::aborted)
                .def_readonly("construction", &Scene::construction)
                .def_readonly("deflation", &Scene::deflation)
                .def_property_readonly("named",
                                       [](const Scene& s) {
                                               std::map<std::string, std::vector<double>> out;
                                               for (const auto& [n, x] : s.named)
                                                       out[n] = x.to_vector();
                                               return out;
                                       })
                .def_property_readonly("landmarks", [](const Scene& s) { return coords(s.L.points); })
                .def_property_readonly("landmark_checksum", [](const Scene& s) { return checksum(s.L.points); })
                .def("simplex", [](const Scene& s, const std::vector<std::string>& names) {
                        std::vector<int> v;
                        for (const auto& n : names)
                                v.push_back(s.L.index_of(n));
                        return make_simplex(v);
                });

        m.def("scene_points", [](const SceneParams& p) {
                std::map<std::string, std::vector<double>> out;
                for (const auto& [n, x] : scene_points(p))
                        out[n] = x.to_vector();
                return out;
        });
        m.def("build_scene", &scene, py::arg("name"), py::arg("params") = SceneParams{});
        m.def("verify_scene",
              [](const Scene& s, const std::string& name, std::vector<double> nus) {
                      if (name == "A")
                              return verify_scene_A(s);
                      if (name == "B")
                              return verify_scene_B(s);
                      if (name == "C")
                              return nus.empty() ? verify_scene_C(s) : verify_scene_C(s, nus);
                      throw py::value_error("scene must be A, B or C");
              },
              py::arg("scene"), py::arg("name"), py::arg("nus") = std::vector<double>{});
        m.def(
                "run_positive_controls",
                [](double eps_fraction, int trials, std::uint64_t seed) {
                        return run_positive_controls(ControlParams{eps_fraction, trials, seed});
                },
                py::arg("eps_fraction") = 0.05, py::arg("witness_trials") = 20, py::arg("seed") = 1);
        m.def("run_negative_controls", &run_negative_controls, py::arg("params") = SceneParams{});

        // building blocks
        m.def("circumcenter", [](const Coords& pts) {
                Circumsphere cs = circumcenter(points(pts));
                return py::make_tuple(cs.center.to_vector(), cs.radius);
        });
        m.def(
                "delaunay",
                [](const Coords& pts, std::uint64_t seed) { return by_dim(build_delaunay(points(pts), seed).complex()); },
                py::arg("points"), py::arg("seed") = 0);
        m.def("euler_characteristic", [](const std::vector<Simplex>& s) { return euler_characteristic(from_simplices(s)); });
        m.def("betti_numbers_mod2", [](const std::vector<Simplex>& s) { return betti_numbers_mod2(from_simplices(s)); });
        m.def(
                "witness_complex",
                [](const Coords& L, const Coords& W, int max_dim) {
                        return by_dim(build_witness_complex(points(L), explicit_witnesses(points(W)), max_dim).complex);
                },
                py::arg("landmarks"), py::arg("witnesses"), py::arg("max_dim") = -1);

        py::class_<ImplicitManifold>(m, "Manifold")
                .def_static("sphere", [](const std::vector<double>& c, double r) { return ImplicitManifold::sphere(Point::from(c), r); })
                .def_static("torus", &ImplicitManifold::torus)
                .def_static("hypercube", &ImplicitManifold::hypercube)
                .def_property_readonly("dim", &ImplicitManifold::dim)
                .def_property_readonly("base_reach", &ImplicitManifold::base_reach)
                .def("field", [](const ImplicitManifold& mf, const std::vector<double>& x) { return mf.field(Point::from(x)); })
                .def("project",
                     [](const ImplicitManifold& mf, const std::vector<double>& x) { return mf.project(Point::from(x)).to_vector(); })
                .def("to_json", [](const ImplicitManifold& mf) { return io::manifold_to_json(mf).dump(); })
                .def_static("from_json", [](const std::string& s) { return io::manifold_from_json(io::json::parse(s)); });

        m.def(
                "sample",
                [](const ImplicitManifold& mf, double epsilon, double spacing, std::uint64_t seed) {
                        Cloud cloud = background_cloud(mf, spacing > 0 ? spacing : epsilon / 4, seed);
                        LandmarkSet L = farthest_point_sample(mf, {}, epsilon, cloud);
                        py::dict d;
                        d["points"] = coords(L.points);
                        d["sparsity"] = L.sparsity;
                        d["density"] = L.density;
                        d["checksum"] = checksum(L.points);
                        return d;
                },
                py::arg("manifold"), py::arg("epsilon"), py::arg("spacing") = 0.0, py::arg("seed") = 1);
        m.def("restricted_delaunay", [](const Coords& pts, const ImplicitManifold& mf) {
                std::vector<Point> L = points(pts);
                RestrictedComplex rc = build_restricted(build_delaunay(L, 0), mf);
                py::dict d;
                d["simplices"] = by_dim(rc.complex);
                d["ambiguous"] = rc.ambiguous;
                return d;
        });
}
