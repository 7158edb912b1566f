// Command-line driver: optimize, geodesics, report, export.
//
// Exit codes: 0 ok, 2 config/usage error, 3 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "isomesh/io.hpp"
#include "isomesh/measures.hpp"
#include "isomesh/mesh.hpp"
#include "isomesh/objective.hpp"
#include "isomesh/optimizer.hpp"

namespace fs = std::filesystem;
using namespace isomesh;

namespace {

int log_level() {
    const char* env = std::getenv("ISOMESH_LOG");
    return env ? std::atoi(env) : 0;
}

constexpr double kPi = 3.14159265358979323846;

std::vector<double> mesh_qualities(const SubdividedMesh& mesh, const MetricField& field,
                                   const TargetSpec& targets) {
    const IdealSimplex ideal = targets.tiling == Tiling::Equilateral
                                   ? IdealSimplex::equilateral()
                                   : IdealSimplex::right();
    const IdealSimplex k0 = ideal.scaled(1.0 / targets.N);
    const TriangleQuadrature quad = TriangleQuadrature::degree2();
    std::vector<double> q;
    q.reserve(mesh.subtriangles.size());
    for (const auto& st : mesh.subtriangles) {
        const Triangle tri{mesh.subvertices[st.v[0]], mesh.subvertices[st.v[1]],
                           mesh.subvertices[st.v[2]]};
        q.push_back(quality_element(tri, k0.vertices, field, quad));
    }
    return q;
}

int run_optimize(const std::string& config_path, std::string out_dir) {
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    fs::create_directories(cfg.out_dir);

    const MetricField field = cfg.field.build();
    MacroMesh macro = build_uniform_grid(cfg.domain, cfg.nx, cfg.ny);
    SubdividedMesh mesh = subdivide(macro, cfg.N);
    classify_edges(mesh, cfg.tiling);
    apply_constraint_mode(mesh, cfg.constraints, cfg.domain);
    if (cfg.initial_rotation_degrees != 0.0)
        apply_initial_rotation(mesh, cfg.initial_rotation_degrees * kPi / 180.0,
                               cfg.domain.center());

    const TargetSpec targets = TargetSpec::make(cfg.tiling, cfg.N);
    std::ofstream log(fs::path(cfg.out_dir) / "optimize.log");
    std::ostream* log_stream = log_level() > 0 ? static_cast<std::ostream*>(&std::cerr) : &log;

    RunStats run;
    int rc = 0;
    try {
        run = continuation_run(mesh, field, targets, cfg.termination, log_stream);
        for (const auto& st : run.stages)
            if (st.termination == "line_search_failure" || st.termination == "infeasible_start")
                rc = 3;
    } catch (const std::exception& e) {
        std::cerr << "optimizer failure: " << e.what() << "\n";
        rc = 3;
    }

    save_mesh((fs::path(cfg.out_dir) / "mesh.txt").string(), mesh);
    ReportData report = compute_report(mesh, field, targets);
    report.run = run;
    std::ofstream rep(fs::path(cfg.out_dir) / "report.json");
    rep << report_to_json(report) << "\n";

    std::cout << "E_final = " << run.cost_final << "  stages = " << run.stages.size()
              << "  wall = " << run.wall_time_seconds << " s\n";
    return rc;
}

int run_geodesics(const std::string& mesh_path, const std::string& field_id,
                  const std::string& config_path, const std::string& out_path) {
    MetricField field = MetricField::constant(MetricTensor::identity());
    try {
        if (!config_path.empty())
            field = load_config(config_path).field.build();
        else
            field = MetricField::from_id(field_id);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    SubdividedMesh mesh;
    try {
        mesh = load_mesh(mesh_path);
    } catch (const std::exception& e) {
        std::cerr << "mesh error: " << e.what() << "\n";
        return 2;
    }

    const GeodesicOverlay overlay = compute_geodesic_overlay(mesh, field);
    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "cannot write " << out_path << "\n";
        return 2;
    }
    os << overlay_to_json(overlay) << "\n";

    int failures = 0;
    double worst = 0.0;
    for (const auto& e : overlay.entries) {
        if (e.deviation < 0.0)
            ++failures;
        else
            worst = std::max(worst, e.deviation);
    }
    std::cout << "macroedges = " << overlay.entries.size() << "  max deviation = " << worst
              << "  bvp failures = " << failures << "\n";
    return 0;
}

int run_report(const std::string& mesh_path, const std::string& config_path,
               const std::string& out_path) {
    RunConfig cfg;
    SubdividedMesh mesh;
    try {
        cfg = load_config(config_path);
        mesh = load_mesh(mesh_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const MetricField field = cfg.field.build();
    const TargetSpec targets = TargetSpec::make(cfg.tiling, mesh.N);
    ReportData report = compute_report(mesh, field, targets);
    report.geodesics = compute_geodesic_overlay(mesh, field);

    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "cannot write " << out_path << "\n";
        return 2;
    }
    os << report_to_json(report) << "\n";
    std::cout << "quality in [" << report.min_quality << ", " << report.max_quality
              << "]  edge ratio in [" << report.min_edge_ratio << ", " << report.max_edge_ratio
              << "]\n";
    return 0;
}

int run_export(const std::string& mesh_path, const std::string& format,
               const std::string& config_path, const std::string& out_path) {
    if (format != "vtk" && format != "svg") {
        std::cerr << "unknown format: " << format << "\n";
        return 2;
    }
    SubdividedMesh mesh;
    try {
        mesh = load_mesh(mesh_path);
    } catch (const std::exception& e) {
        std::cerr << "mesh error: " << e.what() << "\n";
        return 2;
    }

    std::vector<double> quality;
    GeodesicOverlay overlay;
    bool have_overlay = false;
    if (!config_path.empty()) {
        try {
            const RunConfig cfg = load_config(config_path);
            const MetricField field = cfg.field.build();
            quality = mesh_qualities(mesh, field, TargetSpec::make(cfg.tiling, mesh.N));
            if (format == "svg") {
                overlay = compute_geodesic_overlay(mesh, field);
                have_overlay = true;
            }
        } catch (const std::exception& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
    }

    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "cannot write " << out_path << "\n";
        return 2;
    }
    try {
        if (format == "vtk")
            write_vtk(os, mesh, quality);
        else
            write_svg(os, mesh, quality, have_overlay ? &overlay : nullptr);
    } catch (const std::exception& e) {
        std::cerr << "export error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-isometric triangulations for analytic Riemannian metric fields"};
    app.require_subcommand(1);

    std::string config_path, out_dir, mesh_path, field_id, out_path, format;

    auto* opt = app.add_subcommand("optimize", "run the full optimization pipeline");
    opt->add_option("--config", config_path, "run config (JSON)")->required();
    opt->add_option("--out", out_dir, "output directory (overrides config)");

    auto* geo = app.add_subcommand("geodesics", "solve geodesic BVPs for all macroedges");
    geo->add_option("--mesh", mesh_path, "mesh file")->required();
    geo->add_option("--field", field_id, "field id (parameterless fields)");
    geo->add_option("--config", config_path, "run config (JSON), for fields with params");
    geo->add_option("--out", out_path, "overlay output (JSON)")->required();

    auto* rep = app.add_subcommand("report", "quality/length/unitness report for a mesh");
    rep->add_option("--mesh", mesh_path, "mesh file")->required();
    rep->add_option("--config", config_path, "run config (JSON)")->required();
    rep->add_option("--out", out_path, "report output (JSON)")->required();

    auto* exp = app.add_subcommand("export", "write vtk or svg figure");
    exp->add_option("--mesh", mesh_path, "mesh file")->required();
    exp->add_option("--format", format, "vtk | svg")->required();
    exp->add_option("--config", config_path, "run config (JSON), enables quality fill");
    exp->add_option("--out", out_path, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (opt->parsed()) return run_optimize(config_path, out_dir);
    if (geo->parsed()) return run_geodesics(mesh_path, field_id, config_path, out_path);
    if (rep->parsed()) return run_report(mesh_path, config_path, out_path);
    if (exp->parsed()) return run_export(mesh_path, format, config_path, out_path);
    return 2;
}
