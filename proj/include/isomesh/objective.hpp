#pragma once

#include <vector>

#include "isomesh/mesh.hpp"
#include "isomesh/metric.hpp"

namespace isomesh {

// Per-edge-class squared length targets and subtriangle area target, at
// subdivision scale 1/N.
struct TargetSpec {
    Tiling tiling = Tiling::Equilateral;
    int N = 1;

    static TargetSpec make(Tiling tiling, int N);

    double length_sq_target(EdgeClass cls) const;
    double area_target = 0.0;
};

struct BarrierParams {
    double epsilon = 0.0;  // in [0, 1)
};

struct CostBreakdown {
    double total = 0.0;
    double energy = 0.0;
    double barrier = 0.0;
    double min_area_ratio = 0.0;
    double grad_max = 0.0;  // filled by callers that also evaluate the gradient
};

// Edge energy: 1/2 sum_edges (l_M^2(e) - t^2)^2, midpoint metric rule.
double energy_term(const SubdividedMesh& mesh, const MetricField& field,
                   const TargetSpec& targets);

// Barrier: sum_k F_eps(|k|_M / area_target); +inf once any ratio <= eps
// (signed metric area, so inverted subtriangles are infeasible).
double barrier_term(const SubdividedMesh& mesh, const MetricField& field,
                    const TargetSpec& targets, const BarrierParams& eps);

CostBreakdown cost(const SubdividedMesh& mesh, const MetricField& field,
                   const TargetSpec& targets, const BarrierParams& eps);

// Exact analytic gradient of the cost with respect to subvertex coordinates,
// with constrained components zeroed. Requires a finite cost.
std::vector<Vec2> gradient(const SubdividedMesh& mesh, const MetricField& field,
                           const TargetSpec& targets, const BarrierParams& eps);

// Zero the coordinate directions forbidden by the constraint tag.
void project_constraints(const std::vector<ConstraintTag>& tags, std::vector<Vec2>& g);

}  // namespace isomesh
