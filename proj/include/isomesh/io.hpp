#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isomesh/geodesics.hpp"
#include "isomesh/mesh.hpp"
#include "isomesh/metric.hpp"
#include "isomesh/objective.hpp"
#include "isomesh/optimizer.hpp"

namespace isomesh {

struct FieldSpec {
    std::string id = "constant";
    MetricTensor constant_m = MetricTensor::identity();
    bool smooth_abs = false;

    MetricField build() const;
};

struct RunConfig {
    FieldSpec field;
    Rectangle domain{0.0, 1.0, 0.0, 1.0};
    int nx = 3, ny = 3;
    int N = 10;
    Tiling tiling = Tiling::Equilateral;
    double initial_rotation_degrees = 0.0;
    ConstraintMode constraints = ConstraintMode::Free;
    TerminationCriteria termination;
    std::string out_dir = ".";
    unsigned seed = 0;  // reserved, runs are deterministic
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Versioned plain-text mesh format; write -> read -> write is byte-identical.
void write_mesh(std::ostream& os, const SubdividedMesh& mesh);
SubdividedMesh read_mesh(std::istream& is);
void save_mesh(const std::string& path, const SubdividedMesh& mesh);
SubdividedMesh load_mesh(const std::string& path);

struct Histogram {
    std::vector<double> edges;   // size bins + 1
    std::vector<int> counts;     // size bins
    static Histogram build(const std::vector<double>& values, int bins);
};

struct GeodesicOverlay {
    struct Entry {
        int macro_v0 = 0, macro_v1 = 0;
        std::vector<Vec2> geodesic;
        double deviation = -1.0;  // Euclidean; < 0 means BVP failure
        double edge_metric_length = 0.0;
    };
    std::vector<Entry> entries;
};

GeodesicOverlay compute_geodesic_overlay(const SubdividedMesh& mesh, const MetricField& field,
                                         double tol = 1e-8);

struct ReportData {
    std::optional<RunStats> run;
    std::vector<double> edge_lengths_unit;  // scaled by N (so targets are 1, sqrt2)
    std::vector<double> edge_lengths_leg;
    std::vector<double> edge_lengths_hyp;
    std::vector<double> qualities;
    double min_quality = 0.0, max_quality = 0.0;
    double min_edge_ratio = 0.0, max_edge_ratio = 0.0;
    std::optional<GeodesicOverlay> geodesics;
    std::vector<double> parabola_residuals;  // per macroedge, relative to edge length
    std::vector<double> aniso_quotient_samples;
    int qu1_pass = 0, qu1_fail = 0;
};

ReportData compute_report(const SubdividedMesh& mesh, const MetricField& field,
                          const TargetSpec& targets);

std::string report_to_json(const ReportData& report);
std::string overlay_to_json(const GeodesicOverlay& overlay);

// Least-squares quadratic fit to a macroedge chain; max residual relative to
// the edge's Euclidean length.
double parabola_fit_residual(const std::vector<Vec2>& chain);

void write_vtk(std::ostream& os, const SubdividedMesh& mesh,
               const std::vector<double>& cell_quality);
void write_svg(std::ostream& os, const SubdividedMesh& mesh,
               const std::vector<double>& cell_quality,
               const GeodesicOverlay* overlay = nullptr);

}  // namespace isomesh
