// rdel: verify the counter-example scenes, export their artifacts, and run the building blocks on files.
//
// Exit codes: 0 every claim passed, 1 some claim failed, 2 usage or parameter error.

#include "rdel/io.hpp"
#include "rdel/scenes.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace rdel;
using io::json;

namespace {

struct Config {
        SceneParams params;
        std::string mode = "local";
        std::string out = "rdel-out";
        std::string format = "json";
        bool quiet = false;
};

struct UsageError : std::runtime_error {
        using std::runtime_error::runtime_error;
};

// Never overwrites: an existing name gets a numeric suffix.
fs::path fresh_path(const fs::path& dir, const std::string& stem, const std::string& ext)
{
        fs::create_directories(dir);
        fs::path p = dir / (stem + ext);
        for (int i = 1; fs::exists(p); ++i)
                p = dir / (stem + "." + std::to_string(i) + ext);
        return p;
}

fs::path write_file(const Config& cfg, const std::string& stem, const std::string& ext, const std::string& body)
{
        const fs::path p = fresh_path(cfg.out, stem, ext);
        std::ofstream f(p, std::ios::binary);
        if (!f)
                throw std::runtime_error("cannot write " + p.string());
        f << body;
        if (!cfg.quiet)
                std::cerr << "wrote " << p.string() << "\n";
        return p;
}

std::string timestamp()
{
        const std::time_t t = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        return buf;
}

SceneParams finalize(Config& cfg)
{
        if (cfg.mode == "local")
                cfg.params.mode = SceneMode::Local;
        else if (cfg.mode == "full")
                cfg.params.mode = SceneMode::Full;
        else
                throw UsageError("--mode must be local or full");
        try {
                cfg.params.validate();
        } catch (const GeometryError& e) {
                throw UsageError(e.what());
        }
        return cfg.params;
}

void add_scene_flags(CLI::App* app, Config& cfg)
{
        SceneParams& p = cfg.params;
        app->add_option("--mu", p.mu, "reach parameter mu, M has reach 1/mu")->capture_default_str();
        app->add_option("--delta", p.delta, "height offset of p above the facet")->capture_default_str();
        app->add_option("--eta", p.eta, "inflation of the bump of c")->capture_default_str();
        app->add_option("--nu", p.nu, "witness covering radius relative to the reach")->capture_default_str();
        app->add_option("--spacing", p.cloud_spacing, "background cloud spacing")->capture_default_str();
        app->add_option("--mode", cfg.mode, "local (landmark-local certificates) or full (global Delaunay)")
                ->check(CLI::IsMember({"local", "full"}))
                ->capture_default_str();
        app->add_option("--seed", p.seed, "random seed")->capture_default_str();
        app->add_flag("--literal-q", p.literal_q, "place q at z = +delta^2 instead of the mirrored point");
}

void add_io_flags(CLI::App* app, Config& cfg, std::vector<std::string> formats)
{
        app->add_option("--out", cfg.out, "output directory")->capture_default_str();
        app->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(formats))->capture_default_str();
        app->add_flag("--quiet", cfg.quiet, "do not echo reports on stdout");
}

// ---------------------------------------------------------------- verify

int emit(const Config& cfg, const std::string& stem, const std::string& command, const VerificationReport& r)
{
        std::string txt = "# rdel " + command + " generated " + timestamp() + " in " + std::to_string(r.seconds) +
                          " s\n" + r.text();
        if (!cfg.quiet)
                std::cout << r.text() << "\n";
        write_file(cfg, stem, ".txt", txt);
        write_file(cfg, stem, ".json", io::report_to_json(r).dump(2) + "\n");
        return r.overall() ? 0 : 1;
}

int cmd_verify(Config& cfg, const std::string& target, bool nu_given)
{
        const SceneParams p = finalize(cfg);
        const std::string cmd = "verify " + target;
        int rc = 0;
        auto run = [&](const std::string& stem, const VerificationReport& r) { rc = std::max(rc, emit(cfg, stem, cmd, r)); };

        std::optional<Scene> a, b, c;
        const bool all = target == "all";
        if (target == "A" || target == "B" || target == "C" || all)
                a = build_scene_A(p);
        if (target == "A" || all)
                run("scene_A", verify_scene_A(*a));
        if (target == "B" || target == "C" || all)
                b = build_scene_B(*a);
        if (target == "B" || all)
                run("scene_B", verify_scene_B(*b));
        if (target == "C" || all) {
                c = build_scene_C(*b);
                run("scene_C", nu_given ? verify_scene_C(*c, {p.nu}) : verify_scene_C(*c));
        }
        if (target == "controls" || all) {
                run("positive_controls", run_positive_controls(ControlParams{0.05, 20, p.seed}));
                run("negative_controls", run_negative_controls(p));
        }
        if (target == "sweep" || all)
                run("delta_sweep", run_delta_sweep(p));
        return rc;
}

// ---------------------------------------------------------------- export

Scene scene_for(const SceneParams& p, const std::string& name)
{
        Scene s = build_scene_A(p);
        if (name != "A" && !s.aborted)
                s = build_scene_B(s);
        if (name == "C" && !s.aborted)
                s = build_scene_C(s);
        if (s.aborted)
                throw std::runtime_error("scene construction aborted:\n" + s.construction.text());
        return s;
}

const ImplicitManifold& surface_of(const Scene& s, const std::string& scene, const std::string& surface)
{
        if (scene == "A")
                return s.S;
        if (scene == "C" || surface == "minus")
                return s.Sminus;
        return s.Splus;
}

std::array<int, 3> parse_axes(const std::string& spec)
{
        std::array<int, 3> out{};
        std::stringstream ss(spec);
        std::string item;
        int n = 0;
        while (std::getline(ss, item, ',')) {
                int a = -1;
                for (int i = 0; i < 4; ++i)
                        if (item == io::axis_name(i))
                                a = i;
                if (a < 0 || n >= 3)
                        throw UsageError("--axes expects three names among x,y,z,t");
                out[n++] = a;
        }
        if (n != 3)
                throw UsageError("--axes expects three names among x,y,z,t");
        return out;
}

// Writes JSON, reads it back and compares checksums computed on both sides.
void json_with_roundtrip(const Config& cfg, const std::string& stem, const json& j,
                         const std::function<std::uint64_t(const json&)>& sum)
{
        const fs::path p = write_file(cfg, stem, ".json", j.dump(2) + "\n");
        std::ifstream f(p);
        const json back = json::parse(f);
        const std::uint64_t a = sum(j), b = sum(back);
        char buf[96];
        std::snprintf(buf, sizeof buf, "checksum %016llx, re-read %016llx", static_cast<unsigned long long>(a),
                      static_cast<unsigned long long>(b));
        std::cerr << buf << (a == b ? " (round trip ok)\n" : " (ROUND TRIP MISMATCH)\n");
        if (a != b)
                throw std::runtime_error("round trip mismatch for " + p.string());
}

struct ExportOpts {
        std::string what;
        std::string scene = "A";
        std::string surface = "plus";
        std::string slice;
        std::string range;
        std::string axes = "x,y,t";
        int samples = 101;
};

int cmd_export(Config& cfg, const ExportOpts& o)
{
        const SceneParams p = finalize(cfg);
        const std::string fmt = cfg.format;
        if (o.what == "witnesses" && o.scene != "C")
                throw UsageError("witnesses are defined for scene C");
        const Scene s = scene_for(p, o.scene);
        const ImplicitManifold& m = surface_of(s, o.scene, o.surface);
        const std::string stem = o.what + "_" + o.scene;

        if (o.what == "landmarks") {
                if (fmt == "csv") {
                        std::vector<std::string> labels(s.L.points.size());
                        for (const auto& [n, i] : s.L.named)
                                labels[i] = n;
                        write_file(cfg, stem, ".csv", io::points_csv(s.L.points, labels));
                } else if (fmt == "json") {
                        json_with_roundtrip(cfg, stem, io::landmarks_to_json(s.L),
                                            [](const json& j) { return checksum(io::landmarks_from_json(j).points); });
                } else {
                        throw UsageError("landmarks export supports json and csv");
                }
        } else if (o.what == "complex") {
                RestrictedComplex rc;
                if (p.mode == SceneMode::Full)
                        rc = build_restricted(build_delaunay(s.L.points, p.seed), m);
                else
                        rc = local_restricted_star(s, m);
                if (fmt == "off")
                        write_file(cfg, stem, ".off", io::to_off(rc.complex, parse_axes(o.axes)));
                else if (fmt == "json")
                        json_with_roundtrip(cfg, stem, io::restricted_to_json(rc), [](const json& j) {
                                return io::complex_checksum(io::restricted_from_json(j).complex);
                        });
                else
                        throw UsageError("complex export supports json and off");
        } else if (o.what == "witnesses") {
                WitnessSet w = scene_C_witnesses(s);
                WitnessComplex wc = build_witness_complex(s.L.points, w, 3);
                if (fmt != "json")
                        throw UsageError("witnesses export supports json");
                json_with_roundtrip(cfg, "witness_set_C", io::witnesses_to_json(w),
                                    [](const json& j) { return checksum(io::witnesses_from_json(j).points); });
                json_with_roundtrip(cfg, "witness_complex_C", io::witness_complex_to_json(wc, w),
                                    [](const json& j) { return io::complex_checksum(io::complex_from_json(j)); });
        } else if (o.what == "manifold") {
                if (fmt == "json") {
                        json_with_roundtrip(cfg, stem, io::manifold_to_json(m), [](const json& j) {
                                return std::hash<std::string>{}(io::manifold_to_json(io::manifold_from_json(j)).dump());
                        });
                } else if (fmt == "csv") {
                        io::SliceSpec sl = io::parse_slice(o.slice.empty() ? "y=0.5,z=0" : o.slice, m.dim());
                        // default window: unit half-width around c
                        const Point& c = s["c"];
                        sl.a0 = c[sl.a] - 1, sl.a1 = c[sl.a] + 1, sl.b0 = c[sl.b] - 1, sl.b1 = c[sl.b] + 1;
                        if (!o.range.empty() &&
                            std::sscanf(o.range.c_str(), "%lf:%lf,%lf:%lf", &sl.a0, &sl.a1, &sl.b0, &sl.b1) != 4)
                                throw UsageError("--range expects a0:a1,b0:b1");
                        sl.na = sl.nb = o.samples;
                        write_file(cfg, stem + "_slice", ".csv", io::field_slice_csv(m, sl));
                        std::vector<std::string> labels;
                        std::vector<Point> named;
                        for (const auto& [n, x] : s.named) {
                                labels.push_back(n);
                                named.push_back(x);
                        }
                        write_file(cfg, "named_points_" + o.scene, ".csv", io::points_csv(named, labels));
                } else {
                        throw UsageError("manifold export supports json and csv");
                }
        }
        return 0;
}

// ---------------------------------------------------------------- building blocks on files

std::vector<Point> read_points(const std::string& path)
{
        std::ifstream f(path);
        if (!f)
                throw UsageError("cannot read " + path);
        if (fs::path(path).extension() == ".csv") {
                std::vector<Point> out;
                std::string line;
                std::getline(f, line); // header
                while (std::getline(f, line)) {
                        if (line.empty())
                                continue;
                        std::vector<double> c;
                        std::stringstream ss(line);
                        std::string cell;
                        while (std::getline(ss, cell, ','))
                                try {
                                        c.push_back(std::stod(cell));
                                } catch (const std::exception&) {
                                        break; // trailing label column
                                }
                        out.push_back(Point::from(c));
                }
                return out;
        }
        const json j = json::parse(f);
        return io::points_from_json(j.is_array() ? j : j.at("points"));
}

ImplicitManifold named_manifold(const std::string& name, const SceneParams& p)
{
        if (name == "circle")
                return ImplicitManifold::sphere(Point{0, 0}, 1.0);
        if (name == "sphere")
                return ImplicitManifold::sphere(Point{0, 0, 0}, 1.0);
        if (name == "torus")
                return ImplicitManifold::torus(3.0, 1.0);
        return ImplicitManifold::hypercube(4, p.Delta());
}

int cmd_sample(Config& cfg, const std::string& manifold, double eps_fraction)
{
        const SceneParams p = finalize(cfg);
        const ImplicitManifold m = named_manifold(manifold, p);
        const double eps = eps_fraction * m.base_reach();
        Cloud cloud = background_cloud(m, manifold == "cube" ? p.cloud_spacing : eps / 4, p.seed);
        LandmarkSet L = farthest_point_sample(m, {}, eps, cloud);
        std::cerr << L.points.size() << " landmarks, epsilon " << eps << ", sparsity " << L.sparsity << ", density "
                  << L.density << "\n";
        if (cfg.format == "csv")
                write_file(cfg, "landmarks_" + manifold, ".csv", io::points_csv(L.points));
        else
                json_with_roundtrip(cfg, "landmarks_" + manifold, io::landmarks_to_json(L),
                                    [](const json& j) { return checksum(io::landmarks_from_json(j).points); });
        return 0;
}

int cmd_delaunay(Config& cfg, const std::string& input, const std::string& axes)
{
        const SceneParams p = finalize(cfg);
        DelaunayTriangulation t = build_delaunay(read_points(input), p.seed);
        SimplicialComplex k = t.complex();
        std::cerr << t.cells.size() << " cells in dimension " << t.dim << "\n";
        if (cfg.format == "off")
                write_file(cfg, "delaunay", ".off", io::to_off(k, parse_axes(axes)));
        else
                json_with_roundtrip(cfg, "delaunay", io::complex_to_json(k),
                                    [](const json& j) { return io::complex_checksum(io::complex_from_json(j)); });
        return 0;
}

int cmd_witness(Config& cfg, const std::string& landmarks, const std::string& witnesses, int max_dim)
{
        finalize(cfg);
        const std::vector<Point> L = read_points(landmarks);
        WitnessSet w = explicit_witnesses(read_points(witnesses));
        WitnessComplex wc = build_witness_complex(L, w, max_dim);
        std::cerr << wc.complex.size() << " simplices, dimension " << wc.complex.dimension() << "\n";
        json_with_roundtrip(cfg, "witness_complex", io::witness_complex_to_json(wc, w),
                            [](const json& j) { return io::complex_checksum(io::complex_from_json(j)); });
        return 0;
}

} // namespace

int main(int argc, char** argv)
{
        CLI::App app{"Restricted Delaunay and witness complexes on smoothed hypercubes: scene verification and export"};
        app.require_subcommand(1);
        Config cfg;

        auto* verify = app.add_subcommand("verify", "build a scene and check its claims");
        std::string target;
        verify->add_option("target", target, "A, B, C, controls, sweep or all")
                ->required()
                ->check(CLI::IsMember({"A", "B", "C", "controls", "sweep", "all"}));
        add_scene_flags(verify, cfg);
        add_io_flags(verify, cfg, {"json"});

        auto* exp = app.add_subcommand("export", "write scene artifacts");
        ExportOpts eo;
        exp->add_option("what", eo.what, "landmarks, complex, manifold or witnesses")
                ->required()
                ->check(CLI::IsMember({"landmarks", "complex", "manifold", "witnesses"}));
        exp->add_option("--scene", eo.scene, "A, B or C")->check(CLI::IsMember({"A", "B", "C"}))->capture_default_str();
        exp->add_option("--surface", eo.surface, "plus or minus (scene B)")
                ->check(CLI::IsMember({"plus", "minus"}))
                ->capture_default_str();
        exp->add_option("--slice", eo.slice, "fixed coordinates of a 2D field slice, e.g. y=0.5,z=0");
        exp->add_option("--range", eo.range, "slice window a0:a1,b0:b1 on the two free axes");
        exp->add_option("--samples", eo.samples, "grid samples per slice axis")->check(CLI::Range(2, 2001));
        exp->add_option("--axes", eo.axes, "projection axes for OFF")->capture_default_str();
        add_scene_flags(exp, cfg);
        add_io_flags(exp, cfg, {"json", "off", "csv"});

        auto* sample = app.add_subcommand("sample", "farthest-point landmarks on a control surface");
        std::string manifold = "torus";
        double eps_fraction = 0.05;
        sample->add_option("--manifold", manifold, "circle, sphere, torus or cube")
                ->check(CLI::IsMember({"circle", "sphere", "torus", "cube"}))
                ->capture_default_str();
        sample->add_option("--epsilon", eps_fraction, "sampling radius relative to the reach")
                ->check(CLI::PositiveNumber)
                ->capture_default_str();
        add_scene_flags(sample, cfg);
        add_io_flags(sample, cfg, {"json", "csv"});

        auto* del = app.add_subcommand("build-delaunay", "Delaunay triangulation of a point file (JSON or CSV)");
        std::string input, axes = "x,y,z";
        del->add_option("--input", input, "points file")->required();
        del->add_option("--axes", axes, "projection axes for OFF")->capture_default_str();
        add_scene_flags(del, cfg);
        add_io_flags(del, cfg, {"json", "off"});

        auto* wit = app.add_subcommand("witness", "witness complex of landmark and witness files");
        std::string lfile, wfile;
        int max_dim = -1;
        wit->add_option("--landmarks", lfile, "landmark points file")->required();
        wit->add_option("--witnesses", wfile, "witness points file")->required();
        wit->add_option("--max-dim", max_dim, "maximal simplex dimension, -1 for no cap")->capture_default_str();
        add_scene_flags(wit, cfg);
        add_io_flags(wit, cfg, {"json"});

        try {
                app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
                const int rc = app.exit(e);
                return rc == 0 ? 0 : 2;
        }
        try {
                if (*verify)
                        return cmd_verify(cfg, target, verify->count("--nu") > 0);
                if (*exp)
                        return cmd_export(cfg, eo);
                if (*sample)
                        return cmd_sample(cfg, manifold, eps_fraction);
                if (*del)
                        return cmd_delaunay(cfg, input, axes);
                if (*wit)
                        return cmd_witness(cfg, lfile, wfile, max_dim);
        } catch (const UsageError& e) {
                std::cerr << "usage error: " << e.what() << "\n";
                return 2;
        } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
        }
        return 2;
}
