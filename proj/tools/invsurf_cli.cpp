// Command-line front end: scene loading, mesh/curvature export, verification
// runs, classification maps, and the helicoid demo.
//
// Exit codes: 0 success (verify: overall pass), 1 verification failure,
// 2 configuration/parse errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "invsurf/developable.hpp"
#include "invsurf/errors.hpp"
#include "invsurf/mesh.hpp"
#include "invsurf/scene.hpp"
#include "invsurf/verify.hpp"

namespace fs = std::filesystem;
using namespace invsurf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;

struct CommonOpts {
    std::string scene_path;
    std::string out_dir; // empty: fall back to the scene's [output] dir, then "."
    std::string grid_override; // "NxM"
    double tol = 1e-9;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--scene", opts.scene_path,
                    "Scene file (omit to use the built-in helix(1,1) scene)");
    cmd->add_option("--out", opts.out_dir,
                    "Output directory (default: the scene's [output] dir, else '.')");
    cmd->add_option("--grid", opts.grid_override, "Grid size override, e.g. 40x40");
    cmd->add_option("--tol", opts.tol,
                    "Tolerance for classify's flat/minimal/normal-line tests "
                    "(other subcommands use their pinned per-check tolerances)");
}

std::string resolve_out(const CommonOpts& opts, const SceneConfig& cfg) {
    if (!opts.out_dir.empty()) return opts.out_dir;
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    return ".";
}

SceneConfig load_or_default(const CommonOpts& opts) {
    SceneConfig cfg = opts.scene_path.empty() ? default_scene() : load_scene(opts.scene_path);
    if (!opts.grid_override.empty()) {
        int n = 0, m = 0;
        if (std::sscanf(opts.grid_override.c_str(), "%dx%d", &n, &m) != 2 || n < 2 || m < 2)
            throw SceneError("--grid", 0, "expected NxM with N,M >= 2");
        cfg.grid.s_count = n;
        cfg.grid.u_count = m;
    }
    return cfg;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path);
    if (!out) throw SceneError(path.string(), 0, "cannot open output file");
    return out;
}

void export_surface(const SurfaceModel& surface, const GridSpec& grid,
                    const InversionSpec& inversion, const std::string& dir,
                    const std::string& base_name) {
    const auto samples = sample_grid(surface, grid, inversion);
    auto obj = open_output(dir, base_name + ".obj");
    write_obj(obj, samples, grid);
    auto csv = open_output(dir, base_name + ".csv");
    write_csv(csv, samples);
    std::cout << "wrote " << (fs::path(dir) / (base_name + ".obj")).string() << " ("
              << samples.size() << " vertices) and " << base_name << ".csv\n";
}

int run_mesh(const CommonOpts& opts, bool inverted) {
    const SceneConfig cfg = load_or_default(opts);
    const SceneObjects objects = realize_scene(cfg);
    const SurfaceModel& surface =
        inverted ? *objects.inverted_surface : *objects.base_surface;
    export_surface(surface, objects.grid, objects.inversion, resolve_out(opts, cfg),
                   inverted ? "inverse" : "surface");
    return kExitOk;
}

int run_verify(const CommonOpts& opts) {
    const SceneConfig cfg = load_or_default(opts);
    const VerificationReport report = run_suite(cfg);
    const std::string text = format_report(report);
    auto out = open_output(resolve_out(opts, cfg), "report.txt");
    out << text;
    std::cout << text;
    return report.overall_pass ? kExitOk : kExitVerifyFailed;
}

int run_classify(const CommonOpts& opts) {
    const SceneConfig cfg = load_or_default(opts);
    const SceneObjects objects = realize_scene(cfg);
    if (!objects.developable)
        throw SceneError(opts.scene_path.empty() ? "<default>" : opts.scene_path, 0,
                         "classify requires a tangent_developable scene");

    auto csv = open_output(resolve_out(opts, cfg), "classification.csv");
    csv << "s,u,K_N,H_N,flat_reason,minimal,normal_line_through_center\n";
    const GridSpec& grid = objects.grid;
    char line[256];
    std::size_t rows = 0;
    for (int i = 0; i < grid.s_count; ++i) {
        const double s = grid.s_min + (grid.s_max - grid.s_min) * i /
                                          std::max(1, grid.s_count - 1);
        for (int j = 0; j < grid.u_count; ++j) {
            const double u = grid.u_min + (grid.u_max - grid.u_min) * j /
                                              std::max(1, grid.u_count - 1);
            try {
                const ClassificationResult c =
                    classify_point(*objects.developable, objects.inversion, s, u, opts.tol);
                std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%s,%d,%d\n", s, u,
                              c.K_N, c.H_N, to_string(c.flat_reason), c.minimal ? 1 : 0,
                              c.normal_line_through_center ? 1 : 0);
                csv << line;
                ++rows;
            } catch (const Error&) {
                // excluded / degenerate points are omitted from the map
            }
        }
    }
    std::cout << "wrote classification.csv (" << rows << " rows)\n";
    return kExitOk;
}

int run_demo_helicoid(const CommonOpts& opts) {
    // Fig. 1: the helicoid (u cos v, u sin v, 2v); Fig. 2: its inverse with
    // respect to the unit sphere, (u cos v, u sin v, 2v)/(u^2+4v^2).
    const CompiledMap map = parse("u*cos(v), u*sin(v), 2*v", MapKind::Surface);
    GridSpec grid;
    grid.s_min = 0.5;
    grid.s_max = 2.0;
    grid.u_min = -1.5;
    grid.u_max = 1.5;
    grid.s_count = 50;
    grid.u_count = 50;
    if (!opts.grid_override.empty()) {
        int n = 0, m = 0;
        if (std::sscanf(opts.grid_override.c_str(), "%dx%d", &n, &m) != 2 || n < 2 || m < 2)
            throw SceneError("--grid", 0, "expected NxM with N,M >= 2");
        grid.s_count = n;
        grid.u_count = m;
    }
    const ParamDomain domain{grid.s_min, grid.s_max, grid.u_min, grid.u_max};
    const SurfaceModel helicoid = surface_from_map(map, domain);
    const InversionSpec unit_sphere;
    const SurfaceModel inverse = invert_surface(unit_sphere, helicoid);
    const std::string out = opts.out_dir.empty() ? "." : opts.out_dir;
    export_surface(helicoid, grid, unit_sphere, out, "helicoid");
    export_surface(inverse, grid, unit_sphere, out, "helicoid_inverse");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Differential geometry of parametric surfaces under sphere inversion:\n"
        "tangent developables, their inverse surfaces, and a numerically\n"
        "verified battery of closed-form identities.\n\n"
        "Scene file format (one scene per file):\n"
        "  [curve]     type=builtin|expression  name=helix|circle|twisted_cubic\n"
        "              params=a,b  components=<x,y,z exprs>  arc_length=true|false\n"
        "  [surface]   type=tangent_developable|expression  components=...\n"
        "              u_min_exclusion=<float>\n"
        "  [inversion] center=x,y,z  radius=r\n"
        "  [grid]      s_min s_max u_min u_max s_count u_count (key = value)\n"
        "  [output]    dir=<path>   (overridden by --out)\n"};
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* mesh = app.add_subcommand("mesh", "Tessellate the scene surface to OBJ + CSV");
    add_common(mesh, opts);
    CLI::App* invert =
        app.add_subcommand("invert", "Tessellate the inverse surface to OBJ + CSV");
    add_common(invert, opts);
    CLI::App* verify =
        app.add_subcommand("verify", "Run the verification battery and write report.txt");
    add_common(verify, opts);
    CLI::App* classify = app.add_subcommand(
        "classify", "Write a CSV grid of flat/minimal classification results");
    add_common(classify, opts);
    CLI::App* demo = app.add_subcommand("demo-helicoid",
                                        "Emit the helicoid and its inverse surface (OBJ + CSV)");
    add_common(demo, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (mesh->parsed()) return run_mesh(opts, /*inverted=*/false);
        if (invert->parsed()) return run_mesh(opts, /*inverted=*/true);
        if (verify->parsed()) return run_verify(opts);
        if (classify->parsed()) return run_classify(opts);
        if (demo->parsed()) return run_demo_helicoid(opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}
