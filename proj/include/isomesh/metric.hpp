#pragma once

#include <string>

#include "isomesh/errors.hpp"
#include "isomesh/linalg.hpp"

namespace isomesh {

// Symmetric 2x2 tensor stored as its three independent components.
// Used both for metric tensors (positive-definite) and for the symmetric
// partial derivatives of a metric field (indefinite).
struct MetricTensor {
    double m11 = 1.0;
    double m12 = 0.0;
    double m22 = 1.0;

    MetricTensor() = default;
    MetricTensor(double a11, double a12, double a22) : m11(a11), m12(a12), m22(a22) {}

    static MetricTensor identity() { return {1.0, 0.0, 1.0}; }
    static MetricTensor diag(double a, double b) { return {a, 0.0, b}; }
    static MetricTensor zero() { return {0.0, 0.0, 0.0}; }

    double det() const { return m11 * m22 - m12 * m12; }
    double trace() const { return m11 + m22; }
    bool positive_definite() const { return m11 > 0.0 && det() > 0.0; }

    Vec2 operator*(const Vec2& v) const {
        return {m11 * v.x + m12 * v.y, m12 * v.x + m22 * v.y};
    }
    MetricTensor operator*(double s) const { return {m11 * s, m12 * s, m22 * s}; }
    MetricTensor operator+(const MetricTensor& o) const {
        return {m11 + o.m11, m12 + o.m12, m22 + o.m22};
    }

    Mat2 as_mat() const { return {m11, m12, m12, m22}; }

    // u^T [M] v
    double inner(const Vec2& u, const Vec2& v) const {
        return u.x * (m11 * v.x + m12 * v.y) + u.y * (m12 * v.x + m22 * v.y);
    }
    double quad(const Vec2& u) const { return inner(u, u); }

    // Eigenvalues, ascending.
    void eigenvalues(double& lmin, double& lmax) const;
};

struct MetricDerivatives {
    MetricTensor dx;  // d[M]/dx
    MetricTensor dy;  // d[M]/dy
    bool nonsmooth = false;  // evaluated on a kink of the field (S6 with exact abs)
};

// Symmetric positive-definite square root M^{1/2} = P Lambda^{1/2} P^T.
Mat2 sqrt_spd(const MetricTensor& m);

// M^{-1/2} = P Lambda^{-1/2} P^T; satisfies S [M] S = I.
Mat2 sqrt_inverse(const MetricTensor& m);

// Component matrix of the pullback: J^T [N] J (always symmetric).
MetricTensor pullback(const Mat2& J, const MetricTensor& n);

// max_i (det M)^{1/4} / sqrt(lambda_i); equals 1 iff M = c I.
double anisotropic_quotient(const MetricTensor& m);

struct Rectangle {
    double x0 = -1e30, x1 = 1e30;
    double y0 = -1e30, y1 = 1e30;
    bool contains(const Vec2& p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
};

// Analytic metric field over a planar parameter domain.
//
// Catalog (surfaces S = (x, y, f) embedded in R^3, metric induced in the
// parameter plane):
//   s1: f = x            -> diag(2, 1) (constant)
//   s2: f = x^2          -> diag(1 + 4x^2, 1)
//   s3: f = exp(-10 x^2) -> diag(1 + f'^2, 1)
//   s4: M^{-1/2} = diag(x, 1) -> diag(x^-2, 1), x > 0
//   s5: f = x^2 + y^2    -> I + 4 p p^T
//   s6: undulating boundary layer, M = J_phi^T diag(1, h^-2) J_phi
class MetricField {
public:
    enum class Kind { Constant, S1, S2, S3, S4, S5, S6 };

    static MetricField constant(const MetricTensor& m0);
    // ids: "s1".."s6", "constant" (constant requires m0 via constant()).
    static MetricField from_id(const std::string& id);

    MetricTensor evaluate(const Vec2& p) const;
    MetricDerivatives derivatives(const Vec2& p) const;

    Kind kind() const { return kind_; }
    const std::string& id() const { return id_; }
    const Rectangle& validity() const { return validity_; }
    bool is_constant() const { return kind_ == Kind::Constant || kind_ == Kind::S1; }

    // |t| ~ sqrt(t^2 + delta^2) in S6, making the field C^inf for gradient
    // tests. Off by default.
    void set_smooth_abs(bool on) { smooth_abs_ = on; }
    bool smooth_abs() const { return smooth_abs_; }

private:
    Kind kind_ = Kind::Constant;
    std::string id_ = "constant";
    MetricTensor m0_ = MetricTensor::identity();
    Rectangle validity_;
    bool smooth_abs_ = false;

    void check_domain(const Vec2& p) const;
};

}  // namespace isomesh
