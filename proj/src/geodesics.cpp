#include "isomesh/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "isomesh/measures.hpp"

namespace isomesh {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Christoffel christoffel(const MetricField& field, const Vec2& p) {
    const MetricTensor m = field.evaluate(p);
    if (!m.positive_definite())
        throw DegeneracyError("christoffel: metric not positive-definite");
    const MetricDerivatives d = field.derivatives(p);

    // g and its inverse
    const double g[2][2] = {{m.m11, m.m12}, {m.m12, m.m22}};
    const double det = m.det();
    const double gi[2][2] = {{m.m22 / det, -m.m12 / det}, {-m.m12 / det, m.m11 / det}};
    // dg[q][i][j] = d g_ij / d x^q
    const double dg[2][2][2] = {{{d.dx.m11, d.dx.m12}, {d.dx.m12, d.dx.m22}},
                                {{d.dy.m11, d.dy.m12}, {d.dy.m12, d.dy.m22}}};
    (void)g;

    Christoffel c;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double sum = 0.0;
                for (int l = 0; l < 2; ++l)
                    sum += gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                c.gamma[k][i][j] = 0.5 * sum;
            }
    return c;
}

namespace {

struct State {
    Vec2 x, v;
};

State geodesic_rhs(const MetricField& field, const State& s) {
    const Christoffel c = christoffel(field, s.x);
    const double vi[2] = {s.v.x, s.v.y};
    double a[2];
    for (int k = 0; k < 2; ++k) {
        double sum = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sum += c.gamma[k][i][j] * vi[i] * vi[j];
        a[k] = -sum;
    }
    return {s.v, Vec2{a[0], a[1]}};
}

}  // namespace

GeodesicPolyline geodesic_ivp(const MetricField& field, const Vec2& x0, const Vec2& v0,
                              double t_end, int n_steps) {
    GeodesicPolyline out;
    out.initial_velocity = v0;
    out.points.reserve(n_steps + 1);
    out.points.push_back(x0);

    State s{x0, v0};
    const double h = t_end / n_steps;
    for (int i = 0; i < n_steps; ++i) {
        try {
            const State k1 = geodesic_rhs(field, s);
            const State k2 = geodesic_rhs(field, {s.x + k1.x * (h / 2), s.v + k1.v * (h / 2)});
            const State k3 = geodesic_rhs(field, {s.x + k2.x * (h / 2), s.v + k2.v * (h / 2)});
            const State k4 = geodesic_rhs(field, {s.x + k3.x * h, s.v + k3.v * h});
            s.x += (k1.x + k2.x * 2.0 + k3.x * 2.0 + k4.x) * (h / 6.0);
            s.v += (k1.v + k2.v * 2.0 + k3.v * 2.0 + k4.v) * (h / 6.0);
        } catch (const DomainError&) {
            out.left_domain = true;
            break;
        } catch (const DegeneracyError&) {
            out.left_domain = true;
            break;
        }
        if (!field.validity().contains(s.x)) {
            out.left_domain = true;
            break;
        }
        out.points.push_back(s.x);
    }
    out.metric_length = polyline_length(out.points, field, 4);
    return out;
}

namespace {

// Shoot at angle offset alpha from the chord; solve for the launch speed so
// the endpoint's longitudinal progress at t = 1 matches the chord (secant
// iteration, superlinear even under strong curvature), then report the
// transverse miss.
GeodesicPolyline shoot(const MetricField& field, const Vec2& x0, const Vec2& x1, double alpha,
                       int n_steps, double& transverse_miss) {
    const Vec2 chord = x1 - x0;
    const double chord_len = chord.norm();
    const Vec2 u = chord / chord_len;          // longitudinal
    const Vec2 w{-u.y, u.x};                   // transverse

    GeodesicPolyline traj;
    const auto progress_at = [&](double speed) {
        traj = geodesic_ivp(field, x0, rotate(u, alpha) * speed, 1.0, n_steps);
        if (traj.left_domain) return std::numeric_limits<double>::quiet_NaN();
        return (traj.points.back() - x0).dot(u);
    };

    double s_prev = chord_len;
    double p_prev = progress_at(s_prev);
    if (std::isfinite(p_prev) && p_prev > 1e-12 * chord_len &&
        std::fabs(p_prev - chord_len) >= 1e-13 * chord_len) {
        double s_cur = s_prev * chord_len / p_prev;  // fixed-point warm start
        for (int pass = 0; pass < 40; ++pass) {
            const double p_cur = progress_at(s_cur);
            if (!std::isfinite(p_cur) || p_cur <= 1e-12 * chord_len) break;
            if (std::fabs(p_cur - chord_len) < 1e-13 * chord_len) break;
            const double denom = p_cur - p_prev;
            double s_next;
            if (std::fabs(denom) > 1e-300) {
                s_next = s_cur + (chord_len - p_cur) * (s_cur - s_prev) / denom;
            } else {
                s_next = s_cur * chord_len / p_cur;
            }
            if (!(s_next > 0.0) || !std::isfinite(s_next))
                s_next = s_cur * chord_len / p_cur;
            s_prev = s_cur;
            p_prev = p_cur;
            s_cur = s_next;
        }
    }
    transverse_miss = (traj.points.back() - x0).dot(w);
    return traj;
}

}  // namespace

GeodesicPolyline geodesic_bvp(const MetricField& field, const Vec2& x0, const Vec2& x1,
                              double tol, int n_steps) {
    if ((x1 - x0).norm() == 0.0)
        throw std::invalid_argument("geodesic_bvp: coincident endpoints");

    // A straight shot along the chord may already hit (constant metrics,
    // symmetric configurations); skip the bracket scan in that case.
    {
        double miss0;
        GeodesicPolyline straight = shoot(field, x0, x1, 0.0, n_steps, miss0);
        if (!straight.left_domain && (straight.points.back() - x1).norm() < tol)
            return straight;
    }

    const double deg = kPi / 180.0;
    double miss_lo = 0.0, miss_hi = 0.0;

    // Scan +-60 degrees in 5 degree increments for a sign change.
    double a_prev = -60.0 * deg;
    double m_prev;
    shoot(field, x0, x1, a_prev, n_steps, m_prev);
    double a_lo = 0.0, a_hi = 0.0;
    bool bracketed = false;
    for (double a = -55.0 * deg; a <= 60.0 * deg + 1e-12; a += 5.0 * deg) {
        double m;
        shoot(field, x0, x1, a, n_steps, m);
        if (std::isfinite(m_prev) && std::isfinite(m) && m_prev * m <= 0.0) {
            a_lo = a_prev;
            a_hi = a;
            miss_lo = m_prev;
            miss_hi = m;
            bracketed = true;
            break;
        }
        a_prev = a;
        m_prev = m;
    }
    if (!bracketed)
        throw std::runtime_error("geodesic_bvp: no bracket within 60 degrees of chord");
    (void)miss_hi;

    GeodesicPolyline best;
    for (int it = 0; it < 200; ++it) {
        const double a_mid = 0.5 * (a_lo + a_hi);
        double m_mid;
        best = shoot(field, x0, x1, a_mid, n_steps, m_mid);
        const double endpoint_err = (best.points.back() - x1).norm();
        if (endpoint_err < tol) return best;
        if (m_mid * miss_lo <= 0.0) {
            a_hi = a_mid;
        } else {
            a_lo = a_mid;
            miss_lo = m_mid;
        }
    }
    if ((best.points.back() - x1).norm() < 10.0 * tol) return best;
    throw std::runtime_error("geodesic_bvp: bisection did not converge");
}

namespace {

// Resample a polyline at n+1 points equally spaced in Euclidean arc length.
std::vector<Vec2> resample(const std::vector<Vec2>& pts, int n) {
    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        cum[i] = cum[i - 1] + (pts[i] - pts[i - 1]).norm();
    const double total = cum.back();
    std::vector<Vec2> out;
    out.reserve(n + 1);
    std::size_t seg = 0;
    for (int k = 0; k <= n; ++k) {
        const double target = total * k / n;
        while (seg + 1 < cum.size() - 1 && cum[seg + 1] < target) ++seg;
        const double span = cum[seg + 1] - cum[seg];
        const double t = span > 0.0 ? (target - cum[seg]) / span : 0.0;
        out.push_back(pts[seg] + (pts[seg + 1] - pts[seg]) * std::clamp(t, 0.0, 1.0));
    }
    return out;
}

}  // namespace

double geodesic_deviation(const std::vector<Vec2>& edge, const MetricField& field, double tol) {
    if (edge.size() < 2)
        throw std::invalid_argument("geodesic_deviation: polyline too short");
    const GeodesicPolyline geo = geodesic_bvp(field, edge.front(), edge.back(), tol);

    const int n = 64;
    const std::vector<Vec2> a = resample(edge, n);
    const std::vector<Vec2> b = resample(geo.points, n);
    double dev = 0.0;
    for (int i = 0; i <= n; ++i) dev = std::max(dev, (a[i] - b[i]).norm());
    return dev;
}

}  // namespace isomesh
