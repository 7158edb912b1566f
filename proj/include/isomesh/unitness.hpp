#pragma once

#include <optional>
#include <vector>

#include "isomesh/measures.hpp"
#include "isomesh/metric.hpp"

namespace isomesh {

enum class Verdict : int { Fail = 0, Pass = 1, Indeterminate = 2 };

struct Qu1Result {
    double quality = 0.0;
    std::vector<double> edge_ratios;
    bool pass = false;
};

struct Qu2Result {
    std::vector<double> geodesic_deviations;  // relative to edge metric length
    std::vector<double> angle_offsets;        // radians from the ideal angle
    std::vector<double> edge_ratios;
    Verdict verdict = Verdict::Fail;
};

struct JacobianUnitness {
    Mat2 rotation;
    double residual = 0.0;
};

struct UnitnessReport {
    bool is_unit_linear = false;
    JacobianUnitness jacobian;
    Qu1Result qu1;
    Qu2Result qu2;
};

// All edge lengths (16-pt quadrature) within [1 - tol, 1 + tol].
bool is_unit_linear(const Triangle& tri, const MetricField& field, double tol);

// Estimates the rotation R at the first sample as the polar factor of
// M^{1/2} J_K J_ideal^{-1}, then reports
// max_samples ||J_K - M^{-1/2}(x) R J_ideal||_F / ||J_ideal||_F.
JacobianUnitness check_jacobian_unitness(const Triangle& tri, const MetricField& field,
                                         const std::vector<Vec2>& samples);

// Same check for a subdivided macro: per-subtriangle affine Jacobians against
// the matching subtriangle of the reference simplex, sampled at subtriangle
// centroids. Jacobians are per physical subtriangle index.
JacobianUnitness check_jacobian_unitness_sampled(const std::vector<Mat2>& jacobians,
                                                 const std::vector<Vec2>& sample_points,
                                                 const MetricField& field);

// QU1: quality within [a, 1] and each homologous edge ratio in [1/sqrt2, sqrt2].
Qu1Result classify_qu1(const Triangle& k, const IdealSimplex& k0, const MetricField& field,
                       double a = 0.8);

// QU2 on a triangle with polyline edges (edges[i] connects vertex i to
// vertex (i+1) % 3). geo_tol is relative to the edge metric length, b is the
// angle window around the ideal angle.
Qu2Result classify_qu2(const std::array<std::vector<Vec2>, 3>& edges, const IdealSimplex& k0,
                       const MetricField& field, double b_radians = 0.5235987755982988,
                       double geo_tol = 0.05);

}  // namespace isomesh
