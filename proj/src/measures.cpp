#include "isomesh/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace isomesh {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

IdealSimplex IdealSimplex::equilateral() {
    IdealSimplex s;
    s.kind = Kind::Equilateral;
    s.vertices = {Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{0.5, std::sqrt(3.0) / 2.0}};
    s.euclidean_area = std::sqrt(3.0) / 4.0;
    return s;
}

IdealSimplex IdealSimplex::right() {
    IdealSimplex s;
    s.kind = Kind::Right;
    s.vertices = {Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
    s.euclidean_area = 0.5;
    return s;
}

IdealSimplex IdealSimplex::scaled(double sc) const {
    IdealSimplex s = *this;
    for (auto& v : s.vertices) v = v * sc;
    s.euclidean_area *= sc * sc;
    return s;
}

Quadrature1D Quadrature1D::gauss_legendre(int npts) {
    if (npts < 1) throw std::invalid_argument("gauss_legendre: npts must be >= 1");
    Quadrature1D q;
    q.nodes.resize(npts);
    q.weights.resize(npts);
    // Newton iteration on Legendre P_n over [-1,1], then map to [0,1].
    for (int i = 0; i < npts; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (npts + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (npts == 1) { p1 = x; }
            for (int k = 2; k <= npts; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x)
            pp = npts * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        q.nodes[i] = 0.5 * (1.0 - x);  // descending roots -> ascending nodes
        q.weights[i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
    return q;
}

TriangleQuadrature TriangleQuadrature::degree2() {
    TriangleQuadrature q;
    q.bary = {{{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0}},
              {{1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}},
              {{1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}}};
    q.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return q;
}

TriangleQuadrature TriangleQuadrature::degree4() {
    TriangleQuadrature q;
    const double a1 = 0.816847572980459, b1 = 0.091576213509771, w1 = 0.109951743655322;
    const double a2 = 0.108103018168070, b2 = 0.445948490915965, w2 = 0.223381589678011;
    q.bary = {{{a1, b1, b1}}, {{b1, a1, b1}}, {{b1, b1, a1}},
              {{a2, b2, b2}}, {{b2, a2, b2}}, {{b2, b2, a2}}};
    q.weights = {w1, w1, w1, w2, w2, w2};
    return q;
}

double segment_length_midpoint(const Vec2& p0, const Vec2& p1, const MetricField& field) {
    const Vec2 e = p1 - p0;
    const MetricTensor m = field.evaluate((p0 + p1) * 0.5);
    return std::sqrt(m.quad(e));
}

double segment_length_quadrature(const Vec2& p0, const Vec2& p1, const MetricField& field,
                                 int npts) {
    const Quadrature1D q = Quadrature1D::gauss_legendre(npts);
    const Vec2 e = p1 - p0;
    double len = 0.0;
    for (int i = 0; i < npts; ++i) {
        const MetricTensor m = field.evaluate(p0 + e * q.nodes[i]);
        len += q.weights[i] * std::sqrt(m.quad(e));
    }
    return len;
}

double edge_energy(const Vec2& p0, const Vec2& p1, const MetricField& field, int npts) {
    const Quadrature1D q = Quadrature1D::gauss_legendre(npts);
    const Vec2 e = p1 - p0;
    double en = 0.0;
    for (int i = 0; i < npts; ++i) {
        const MetricTensor m = field.evaluate(p0 + e * q.nodes[i]);
        en += q.weights[i] * m.quad(e);
    }
    return 0.5 * en;
}

double polyline_length(const std::vector<Vec2>& pts, const MetricField& field, int npts) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        len += segment_length_quadrature(pts[i], pts[i + 1], field, npts);
    return len;
}

double triangle_signed_area(const Triangle& tri) {
    return 0.5 * (tri[1] - tri[0]).cross(tri[2] - tri[0]);
}

double triangle_area_metric(const Triangle& tri, const MetricField& field) {
    const TriangleQuadrature quad = TriangleQuadrature::degree2();
    double s = 0.0;
    for (std::size_t i = 0; i < quad.bary.size(); ++i) {
        const auto& b = quad.bary[i];
        const Vec2 x = tri[0] * b[0] + tri[1] * b[1] + tri[2] * b[2];
        s += quad.weights[i] * std::sqrt(field.evaluate(x).det());
    }
    return s * triangle_signed_area(tri);
}

double inner_angle(const Vec2& u, const Vec2& v, const MetricTensor& m) {
    const double nu = std::sqrt(m.quad(u)), nv = std::sqrt(m.quad(v));
    if (nu == 0.0 || nv == 0.0)
        throw std::invalid_argument("inner_angle: zero vector");
    double c = m.inner(u, v) / (nu * nv);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

Mat2 affine_jacobian(const Triangle& src, const Triangle& dst) {
    const Mat2 es = Mat2::from_columns(src[1] - src[0], src[2] - src[0]);
    if (es.det() == 0.0)
        throw DegeneracyError("affine_jacobian: degenerate source triangle");
    const Mat2 ed = Mat2::from_columns(dst[1] - dst[0], dst[2] - dst[0]);
    return ed * es.inverse();
}

double distortion_pointwise(const Mat2& J, const MetricTensor& m) {
    const MetricTensor p = pullback(J, m);
    const double det = p.det();
    if (det <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * p.trace() / std::sqrt(det);
}

double quality_element(const Triangle& k, const Triangle& k0, const MetricField& field,
                       const TriangleQuadrature& quad) {
    if (triangle_signed_area(k0) <= 0.0)
        throw DegeneracyError("quality_element: degenerate ideal simplex");
    if (triangle_signed_area(k) <= 0.0) return 0.0;

    const Mat2 J = affine_jacobian(k0, k);
    double mean_eta2 = 0.0;
    for (std::size_t i = 0; i < quad.bary.size(); ++i) {
        const auto& b = quad.bary[i];
        const Vec2 x = k[0] * b[0] + k[1] * b[1] + k[2] * b[2];
        const double eta = distortion_pointwise(J, field.evaluate(x));
        if (!std::isfinite(eta)) return 0.0;
        mean_eta2 += quad.weights[i] * eta * eta;
    }
    return 1.0 / std::sqrt(mean_eta2);
}

}  // namespace isomesh
