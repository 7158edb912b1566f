#pragma once

#include <array>
#include <vector>

#include "isomesh/linalg.hpp"
#include "isomesh/metric.hpp"

namespace isomesh {

using Triangle = std::array<Vec2, 3>;

// Ideal target simplices.
struct IdealSimplex {
    enum class Kind { Equilateral, Right };
    Kind kind;
    Triangle vertices;
    double euclidean_area;

    static IdealSimplex equilateral();  // (0,0), (1,0), (1/2, sqrt3/2)
    static IdealSimplex right();        // (0,0), (1,0), (0,1)
    IdealSimplex scaled(double s) const;
};

// Gauss-Legendre nodes/weights on [0,1].
struct Quadrature1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    static Quadrature1D gauss_legendre(int npts);
};

// Symmetric triangle quadrature in barycentric coordinates, weights sum to 1.
struct TriangleQuadrature {
    std::vector<std::array<double, 3>> bary;
    std::vector<double> weights;
    static TriangleQuadrature degree2();  // 3 points
    static TriangleQuadrature degree4();  // 6 points
};

// sqrt(e^T [M]((p0+p1)/2) e) with e = p1 - p0.
double segment_length_midpoint(const Vec2& p0, const Vec2& p1, const MetricField& field);

// Gauss-Legendre approximation of the metric length integral.
double segment_length_quadrature(const Vec2& p0, const Vec2& p1, const MetricField& field,
                                 int npts);

// 1/2 * integral of e^T [M](p0 + t e) e dt.
double edge_energy(const Vec2& p0, const Vec2& p1, const MetricField& field, int npts);

// Metric length of a polyline (quadrature per segment).
double polyline_length(const std::vector<Vec2>& pts, const MetricField& field, int npts = 8);

// Signed metric area: signed Euclidean area times the degree-2 three-point
// average of sqrt(det [M]). Sign preserved. The interior-node rule keeps the
// estimate usable where the metric varies at subtriangle scale (a centroid
// sample can be off by tens of percent across a thin anisotropic band).
double triangle_area_metric(const Triangle& tri, const MetricField& field);

double triangle_signed_area(const Triangle& tri);

// Metric angle between u and v, arccos argument clamped to [-1, 1].
double inner_angle(const Vec2& u, const Vec2& v, const MetricTensor& m);

// Constant Jacobian of the affine map taking src onto dst.
Mat2 affine_jacobian(const Triangle& src, const Triangle& dst);

// AM-GM distortion (1/2) trace(J^T [M] J) / det(J^T [M] J)^{1/2} >= 1.
// Singular J or indefinite pullback yields +inf.
double distortion_pointwise(const Mat2& J, const MetricTensor& m);

// Elementwise distortion-based quality Q = (mean of eta^2 over k0)^{-1/2}
// for linear triangles k measured against the ideal k0. Inverted k -> 0.
double quality_element(const Triangle& k, const Triangle& k0, const MetricField& field,
                       const TriangleQuadrature& quad);

}  // namespace isomesh
