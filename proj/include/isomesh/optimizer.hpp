#pragma once

#include <functional>
#include <string>
#include <vector>

#include "isomesh/mesh.hpp"
#include "isomesh/objective.hpp"

namespace isomesh {

struct TerminationCriteria {
    double rel_cost_decrease_tol = 1e-6;
    double grad_maxnorm_tol = 1e-10;
    double step_norm_tol = 1e-8;
    int max_iters = 5000;
};

struct StageStats {
    int stage = 0;
    double epsilon = 0.0;
    int iterations = 0;
    double cost_initial = 0.0;
    double cost_final = 0.0;
    double grad_max_final = 0.0;
    double min_area_ratio = 0.0;
    std::string termination;  // "rel_cost" | "gradient" | "step" | "max_iters" | "line_search_failure"
};

struct RunStats {
    std::vector<StageStats> stages;
    double wall_time_seconds = 0.0;
    double cost_final = 0.0;
    double min_area_ratio_final = 0.0;
};

// Objective over a flat coordinate vector. Must return +inf (not throw) for
// infeasible points; the gradient is only requested at finite-cost points.
struct VectorObjective {
    std::function<double(const std::vector<double>&)> value;
    std::function<double(const std::vector<double>&, std::vector<double>&)> value_and_gradient;
};

// Limited-memory quasi-Newton (history 10) with backtracking Armijo line
// search; trial steps with non-finite cost are rejected.
StageStats minimize_stage(std::vector<double>& x, const VectorObjective& objective,
                          const TerminationCriteria& criteria,
                          std::ostream* log = nullptr);

// Full log-barrier continuation: stage 1 at eps = 0, then
// eps <- min(0.99, 0.99 * min_k |k|_M / |k|_target), 5 updates.
RunStats continuation_run(SubdividedMesh& mesh, const MetricField& field,
                          const TargetSpec& targets, const TerminationCriteria& criteria,
                          std::ostream* log = nullptr);

// Next barrier position from the smallest area ratio.
double next_epsilon(double min_ratio);

// Flatten / restore the subvertex coordinates.
std::vector<double> pack_coordinates(const SubdividedMesh& mesh);
void unpack_coordinates(const std::vector<double>& x, SubdividedMesh& mesh);

}  // namespace isomesh
