#include "isomesh/metric.hpp"

#include <cmath>

namespace isomesh {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSmoothAbsDelta = 1e-8;

// Eigendecomposition of a symmetric 2x2 matrix via the rotation angle.
// Returns (c, s) of the eigenvector rotation and the two eigenvalues.
void sym_eigen(const MetricTensor& m, double& c, double& s, double& l1, double& l2) {
    if (m.m12 == 0.0) {
        c = 1.0;
        s = 0.0;
        l1 = m.m11;
        l2 = m.m22;
        return;
    }
    const double theta = 0.5 * std::atan2(2.0 * m.m12, m.m11 - m.m22);
    c = std::cos(theta);
    s = std::sin(theta);
    l1 = c * c * m.m11 + 2.0 * c * s * m.m12 + s * s * m.m22;
    l2 = s * s * m.m11 - 2.0 * c * s * m.m12 + c * c * m.m22;
}

Mat2 spectral_map(const MetricTensor& m, double (*fn)(double)) {
    double c, s, l1, l2;
    sym_eigen(m, c, s, l1, l2);
    if (l1 <= 0.0 || l2 <= 0.0)
        throw DegeneracyError("metric tensor has a non-positive eigenvalue");
    const double f1 = fn(l1), f2 = fn(l2);
    return {c * c * f1 + s * s * f2, c * s * (f1 - f2),
            c * s * (f1 - f2), s * s * f1 + c * c * f2};
}

}  // namespace

void MetricTensor::eigenvalues(double& lmin, double& lmax) const {
    const double mean = 0.5 * (m11 + m22);
    const double r = std::hypot(0.5 * (m11 - m22), m12);
    lmin = mean - r;
    lmax = mean + r;
}

Mat2 sqrt_spd(const MetricTensor& m) {
    return spectral_map(m, [](double l) { return std::sqrt(l); });
}

Mat2 sqrt_inverse(const MetricTensor& m) {
    return spectral_map(m, [](double l) { return 1.0 / std::sqrt(l); });
}

MetricTensor pullback(const Mat2& J, const MetricTensor& n) {
    const Vec2 c0(J.a, J.c), c1(J.b, J.d);
    return {n.inner(c0, c0), n.inner(c0, c1), n.inner(c1, c1)};
}

double anisotropic_quotient(const MetricTensor& m) {
    if (!m.positive_definite())
        throw DegeneracyError("anisotropic_quotient: metric not positive-definite");
    double lmin, lmax;
    m.eigenvalues(lmin, lmax);
    return std::pow(m.det(), 0.25) / std::sqrt(lmin);
}

MetricField MetricField::constant(const MetricTensor& m0) {
    if (!m0.positive_definite())
        throw DegeneracyError("constant metric must be positive-definite");
    MetricField f;
    f.kind_ = Kind::Constant;
    f.id_ = "constant";
    f.m0_ = m0;
    return f;
}

MetricField MetricField::from_id(const std::string& id) {
    MetricField f;
    f.id_ = id;
    if (id == "constant" || id == "identity") {
        f.kind_ = Kind::Constant;
    } else if (id == "s1") {
        f.kind_ = Kind::S1;
    } else if (id == "s2") {
        f.kind_ = Kind::S2;
    } else if (id == "s3") {
        f.kind_ = Kind::S3;
    } else if (id == "s4") {
        f.kind_ = Kind::S4;
        f.validity_.x0 = 0.0;  // open at x = 0, enforced by the PD check
    } else if (id == "s5") {
        f.kind_ = Kind::S5;
    } else if (id == "s6") {
        f.kind_ = Kind::S6;
    } else {
        throw DomainError("unknown metric field id: " + id);
    }
    return f;
}

void MetricField::check_domain(const Vec2& p) const {
    if (!validity_.contains(p))
        throw DomainError("point outside field validity domain");
}

namespace {

// S6 helper quantities. g = (10y - cos 2pi x)/s with s = sqrt(100 + 4 pi^2).
struct S6State {
    double g, gx, gy, gxx;  // gxy = gyy = 0
    double absg, dabs;      // |g| and d|g|/dg
    bool kink;
};

S6State s6_state(const Vec2& p, bool smooth) {
    S6State st;
    const double s = std::sqrt(100.0 + 4.0 * kPi * kPi);
    st.g = (10.0 * p.y - std::cos(2.0 * kPi * p.x)) / s;
    st.gx = 2.0 * kPi * std::sin(2.0 * kPi * p.x) / s;
    st.gy = 10.0 / s;
    st.gxx = 4.0 * kPi * kPi * std::cos(2.0 * kPi * p.x) / s;
    st.kink = false;
    if (smooth) {
        const double r = std::sqrt(st.g * st.g + kSmoothAbsDelta * kSmoothAbsDelta);
        st.absg = r;
        st.dabs = st.g / r;
    } else {
        st.absg = std::fabs(st.g);
        st.dabs = st.g > 0.0 ? 1.0 : (st.g < 0.0 ? -1.0 : 0.0);
        st.kink = st.g == 0.0;
    }
    return st;
}

}  // namespace

MetricTensor MetricField::evaluate(const Vec2& p) const {
    check_domain(p);
    switch (kind_) {
        case Kind::Constant:
            return m0_;
        case Kind::S1:
            return MetricTensor::diag(2.0, 1.0);
        case Kind::S2:
            return MetricTensor::diag(1.0 + 4.0 * p.x * p.x, 1.0);
        case Kind::S3: {
            const double fp = -20.0 * p.x * std::exp(-10.0 * p.x * p.x);
            return MetricTensor::diag(1.0 + fp * fp, 1.0);
        }
        case Kind::S4: {
            if (p.x <= 0.0)
                throw DegeneracyError("s4 metric degenerate at x <= 0");
            return MetricTensor::diag(1.0 / (p.x * p.x), 1.0);
        }
        case Kind::S5:
            return {1.0 + 4.0 * p.x * p.x, 4.0 * p.x * p.y, 1.0 + 4.0 * p.y * p.y};
        case Kind::S6: {
            const S6State st = s6_state(p, smooth_abs_);
            const double h = 0.1 + 2.0 * st.absg;
            const double w = 1.0 / (h * h);
            // J_phi = [[1, 0], [gx, gy]], M = J^T diag(1, h^-2) J
            return {1.0 + w * st.gx * st.gx, w * st.gx * st.gy, w * st.gy * st.gy};
        }
    }
    return m0_;
}

MetricDerivatives MetricField::derivatives(const Vec2& p) const {
    check_domain(p);
    MetricDerivatives d;
    d.dx = MetricTensor::zero();
    d.dy = MetricTensor::zero();
    switch (kind_) {
        case Kind::Constant:
        case Kind::S1:
            break;
        case Kind::S2:
            d.dx.m11 = 8.0 * p.x;
            break;
        case Kind::S3: {
            const double e = std::exp(-10.0 * p.x * p.x);
            const double fp = -20.0 * p.x * e;
            const double fpp = (400.0 * p.x * p.x - 20.0) * e;
            d.dx.m11 = 2.0 * fp * fpp;
            break;
        }
        case Kind::S4: {
            if (p.x <= 0.0)
                throw DegeneracyError("s4 metric degenerate at x <= 0");
            d.dx.m11 = -2.0 / (p.x * p.x * p.x);
            break;
        }
        case Kind::S5:
            d.dx = {8.0 * p.x, 4.0 * p.y, 0.0};
            d.dy = {0.0, 4.0 * p.x, 8.0 * p.y};
            break;
        case Kind::S6: {
            const S6State st = s6_state(p, smooth_abs_);
            d.nonsmooth = st.kink;
            const double h = 0.1 + 2.0 * st.absg;
            const double w = 1.0 / (h * h);
            // dh/dq = 2 d|g|/dg * dg/dq,  dw/dq = -2 h^-3 dh/dq
            const double hx = 2.0 * st.dabs * st.gx;
            const double hy = 2.0 * st.dabs * st.gy;
            const double wx = -2.0 * hx / (h * h * h);
            const double wy = -2.0 * hy / (h * h * h);
            // M11 = 1 + w gx^2, M12 = w gx gy, M22 = w gy^2, gy constant.
            d.dx = {wx * st.gx * st.gx + 2.0 * w * st.gx * st.gxx,
                    wx * st.gx * st.gy + w * st.gxx * st.gy,
                    wx * st.gy * st.gy};
            d.dy = {wy * st.gx * st.gx, wy * st.gx * st.gy, wy * st.gy * st.gy};
            break;
        }
    }
    return d;
}

}  // namespace isomesh
