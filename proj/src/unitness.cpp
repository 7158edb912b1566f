#include "isomesh/unitness.hpp"

#include <cmath>
#include <stdexcept>

#include "isomesh/geodesics.hpp"

namespace isomesh {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

bool in_ratio_window(double r) { return r >= 1.0 / kSqrt2 && r <= kSqrt2; }

double euclidean_edge_length(const Triangle& t, int i) {
    return (t[(i + 1) % 3] - t[i]).norm();
}

double ideal_vertex_angle(const Triangle& t, int i) {
    const Vec2 u = t[(i + 1) % 3] - t[i];
    const Vec2 v = t[(i + 2) % 3] - t[i];
    return inner_angle(u, v, MetricTensor::identity());
}

}  // namespace

bool is_unit_linear(const Triangle& tri, const MetricField& field, double tol) {
    for (int i = 0; i < 3; ++i) {
        const double l = segment_length_quadrature(tri[i], tri[(i + 1) % 3], field, 16);
        if (l < 1.0 - tol || l > 1.0 + tol) return false;
    }
    return true;
}

JacobianUnitness check_jacobian_unitness_sampled(const std::vector<Mat2>& jacobians,
                                                 const std::vector<Vec2>& sample_points,
                                                 const MetricField& field) {
    if (jacobians.empty() || jacobians.size() != sample_points.size())
        throw std::invalid_argument("check_jacobian_unitness: empty or mismatched samples");

    const IdealSimplex ideal = IdealSimplex::equilateral();
    const Mat2 j_ideal = affine_jacobian(IdealSimplex::right().vertices, ideal.vertices);
    const double j_ideal_norm = j_ideal.frobenius_norm();

    JacobianUnitness out;
    {
        if (jacobians[0].det() == 0.0)
            throw DegeneracyError("check_jacobian_unitness: singular Jacobian");
        const Mat2 msqrt = sqrt_spd(field.evaluate(sample_points[0]));
        out.rotation = polar_rotation(msqrt * jacobians[0] * j_ideal.inverse());
    }

    double worst = 0.0;
    for (std::size_t s = 0; s < jacobians.size(); ++s) {
        const Mat2 minv_sqrt = sqrt_inverse(field.evaluate(sample_points[s]));
        const Mat2 expected = minv_sqrt * out.rotation * j_ideal;
        worst = std::max(worst, (jacobians[s] - expected).frobenius_norm() / j_ideal_norm);
    }
    out.residual = worst;
    return out;
}

JacobianUnitness check_jacobian_unitness(const Triangle& tri, const MetricField& field,
                                         const std::vector<Vec2>& samples) {
    const Mat2 J = affine_jacobian(IdealSimplex::right().vertices, tri);
    std::vector<Vec2> pts = samples;
    if (pts.empty()) pts.push_back((tri[0] + tri[1] + tri[2]) / 3.0);
    return check_jacobian_unitness_sampled(std::vector<Mat2>(pts.size(), J), pts, field);
}

Qu1Result classify_qu1(const Triangle& k, const IdealSimplex& k0, const MetricField& field,
                       double a) {
    Qu1Result r;
    r.quality = quality_element(k, k0.vertices, field, TriangleQuadrature::degree2());
    bool ratios_ok = true;
    for (int i = 0; i < 3; ++i) {
        const double lm = segment_length_quadrature(k[i], k[(i + 1) % 3], field, 16);
        const double ratio = lm / euclidean_edge_length(k0.vertices, i);
        r.edge_ratios.push_back(ratio);
        ratios_ok = ratios_ok && in_ratio_window(ratio);
    }
    r.pass = r.quality >= a && r.quality <= 1.0 + 1e-12 && ratios_ok;
    return r;
}

Qu2Result classify_qu2(const std::array<std::vector<Vec2>, 3>& edges, const IdealSimplex& k0,
                       const MetricField& field, double b_radians, double geo_tol) {
    Qu2Result r;
    bool ok = true;
    bool indeterminate = false;

    for (int i = 0; i < 3; ++i) {
        const double lm = polyline_length(edges[i], field, 8);
        const double ratio = lm / euclidean_edge_length(k0.vertices, i);
        r.edge_ratios.push_back(ratio);
        ok = ok && in_ratio_window(ratio);

        try {
            const double dev = geodesic_deviation(edges[i], field, 1e-8);
            r.geodesic_deviations.push_back(dev / lm);
            ok = ok && dev <= geo_tol * lm;
        } catch (const std::exception&) {
            r.geodesic_deviations.push_back(-1.0);
            indeterminate = true;
        }
    }

    // Vertex angles: tangents of the two incident polyline edges at vertex i
    // (edge i leaves vertex i; edge (i+2)%3 arrives at it).
    for (int i = 0; i < 3; ++i) {
        const auto& out_e = edges[i];
        const auto& in_e = edges[(i + 2) % 3];
        const Vec2 p = out_e.front();
        const Vec2 u = out_e[1] - out_e[0];
        const Vec2 v = in_e[in_e.size() - 2] - in_e.back();
        const double theta = inner_angle(u, v, field.evaluate(p));
        const double theta0 = ideal_vertex_angle(k0.vertices, i);
        r.angle_offsets.push_back(theta - theta0);
        ok = ok && std::fabs(theta - theta0) <= b_radians;
    }

    if (indeterminate && ok)
        r.verdict = Verdict::Indeterminate;
    else
        r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return r;
}

}  // namespace isomesh
