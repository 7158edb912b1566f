#pragma once

#include <random>

#include "isomesh/linalg.hpp"
#include "isomesh/metric.hpp"

namespace isomesh::testutil {

inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Mat2 random_rotation() { return Mat2::rotation(uniform(0.0, 6.283185307179586)); }

// Random SPD matrix with eigenvalues in [0.2, 5].
inline MetricTensor random_spd() {
    const Mat2 r = random_rotation();
    const double l1 = uniform(0.2, 5.0), l2 = uniform(0.2, 5.0);
    const Mat2 m = r * Mat2(l1, 0.0, 0.0, l2) * r.transposed();
    return {m.a, 0.5 * (m.b + m.c), m.d};
}

inline MetricTensor random_symmetric(double lo = -2.0, double hi = 2.0) {
    return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
}

// Central finite difference of the metric field components.
inline MetricDerivatives fd_derivatives(const MetricField& f, const Vec2& p, double h = 1e-5) {
    const MetricTensor xp = f.evaluate({p.x + h, p.y}), xm = f.evaluate({p.x - h, p.y});
    const MetricTensor yp = f.evaluate({p.x, p.y + h}), ym = f.evaluate({p.x, p.y - h});
    MetricDerivatives d;
    d.dx = {(xp.m11 - xm.m11) / (2 * h), (xp.m12 - xm.m12) / (2 * h), (xp.m22 - xm.m22) / (2 * h)};
    d.dy = {(yp.m11 - ym.m11) / (2 * h), (yp.m12 - ym.m12) / (2 * h), (yp.m22 - ym.m22) / (2 * h)};
    return d;
}

inline double tensor_max_abs(const MetricTensor& t) {
    return std::max({std::fabs(t.m11), std::fabs(t.m12), std::fabs(t.m22)});
}

inline double deriv_rel_error(const MetricDerivatives& a, const MetricDerivatives& b) {
    const double scale = std::max(
        {1.0, tensor_max_abs(a.dx), tensor_max_abs(a.dy)});
    const MetricTensor ex{a.dx.m11 - b.dx.m11, a.dx.m12 - b.dx.m12, a.dx.m22 - b.dx.m22};
    const MetricTensor ey{a.dy.m11 - b.dy.m11, a.dy.m12 - b.dy.m12, a.dy.m22 - b.dy.m22};
    return std::max(tensor_max_abs(ex), tensor_max_abs(ey)) / scale;
}

}  // namespace isomesh::testutil
