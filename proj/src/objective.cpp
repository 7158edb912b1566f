#include "isomesh/objective.hpp"

#include "isomesh/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace isomesh {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TargetSpec TargetSpec::make(Tiling tiling, int N) {
    TargetSpec t;
    t.tiling = tiling;
    t.N = N;
    t.area_target = (tiling == Tiling::Equilateral ? std::sqrt(3.0) / 4.0 : 0.5) / (N * N);
    return t;
}

double TargetSpec::length_sq_target(EdgeClass cls) const {
    const double n2 = static_cast<double>(N) * N;
    return cls == EdgeClass::Hypotenuse ? 2.0 / n2 : 1.0 / n2;
}

double energy_term(const SubdividedMesh& mesh, const MetricField& field,
                   const TargetSpec& targets) {
    double e = 0.0;
    for (const auto& edge : mesh.subedges) {
        const Vec2& p0 = mesh.subvertices[edge.v0];
        const Vec2& p1 = mesh.subvertices[edge.v1];
        const Vec2 d = p1 - p0;
        const MetricTensor m = field.evaluate((p0 + p1) * 0.5);
        const double r = m.quad(d) - targets.length_sq_target(edge.cls);
        e += r * r;
    }
    return 0.5 * e;
}

namespace {

// F_eps(x) = [ln((x - eps)/(1 - eps))]^2 + (x - 1)^2
double barrier_fn(double x, double eps) {
    if (x <= eps) return kInf;
    const double l = std::log((x - eps) / (1.0 - eps));
    return l * l + (x - 1.0) * (x - 1.0);
}

double barrier_fn_deriv(double x, double eps) {
    const double l = std::log((x - eps) / (1.0 - eps));
    return 2.0 * l / (x - eps) + 2.0 * (x - 1.0);
}

}  // namespace

double barrier_term(const SubdividedMesh& mesh, const MetricField& field,
                    const TargetSpec& targets, const BarrierParams& eps) {
    double f = 0.0;
    for (const auto& st : mesh.subtriangles) {
        const Triangle tri{mesh.subvertices[st.v[0]], mesh.subvertices[st.v[1]],
                           mesh.subvertices[st.v[2]]};
        const double ratio = triangle_area_metric(tri, field) / targets.area_target;
        const double v = barrier_fn(ratio, eps.epsilon);
        if (!std::isfinite(v)) return kInf;
        f += v;
    }
    return f;
}

CostBreakdown cost(const SubdividedMesh& mesh, const MetricField& field,
                   const TargetSpec& targets, const BarrierParams& eps) {
    CostBreakdown cb;
    cb.min_area_ratio = kInf;
    for (const auto& st : mesh.subtriangles) {
        const Triangle tri{mesh.subvertices[st.v[0]], mesh.subvertices[st.v[1]],
                           mesh.subvertices[st.v[2]]};
        const double ratio = triangle_area_metric(tri, field) / targets.area_target;
        cb.min_area_ratio = std::min(cb.min_area_ratio, ratio);
        cb.barrier += barrier_fn(ratio, eps.epsilon);
    }
    cb.energy = energy_term(mesh, field, targets);
    cb.total = cb.energy + cb.barrier;
    return cb;
}

void project_constraints(const std::vector<ConstraintTag>& tags, std::vector<Vec2>& g) {
    for (std::size_t i = 0; i < tags.size(); ++i) {
        switch (tags[i]) {
            case ConstraintTag::Free:
                break;
            case ConstraintTag::Fixed:
                g[i] = {0.0, 0.0};
                break;
            case ConstraintTag::SlideX:  // y held constant
                g[i].y = 0.0;
                break;
            case ConstraintTag::SlideY:  // x held constant
                g[i].x = 0.0;
                break;
        }
    }
}

std::vector<Vec2> gradient(const SubdividedMesh& mesh, const MetricField& field,
                           const TargetSpec& targets, const BarrierParams& eps) {
    std::vector<Vec2> g(mesh.subvertices.size(), Vec2{0.0, 0.0});
    const bool constant = field.is_constant();

    // Edge energy term. l^2 = d^T M(mid) d, dE = sum r * dl^2 with
    // r = l^2 - t^2 and dl^2 through both the edge vector and the midpoint.
    for (const auto& edge : mesh.subedges) {
        const Vec2& p0 = mesh.subvertices[edge.v0];
        const Vec2& p1 = mesh.subvertices[edge.v1];
        const Vec2 d = p1 - p0;
        const Vec2 mid = (p0 + p1) * 0.5;
        const MetricTensor m = field.evaluate(mid);
        const double r = m.quad(d) - targets.length_sq_target(edge.cls);
        const Vec2 md = m * d;
        Vec2 q{0.0, 0.0};
        if (!constant) {
            const MetricDerivatives dm = field.derivatives(mid);
            q = {dm.dx.quad(d), dm.dy.quad(d)};
        }
        g[edge.v0] += r * (md * -2.0 + q * 0.5);
        g[edge.v1] += r * (md * 2.0 + q * 0.5);
    }

    // Barrier term. x = S * A / A_t with S the three-point quadrature average
    // of s = sqrt(det M) over the triangle interior.
    const TriangleQuadrature tq = TriangleQuadrature::degree2();
    for (const auto& st : mesh.subtriangles) {
        const Vec2& p0 = mesh.subvertices[st.v[0]];
        const Vec2& p1 = mesh.subvertices[st.v[1]];
        const Vec2& p2 = mesh.subvertices[st.v[2]];
        const double area = 0.5 * (p1 - p0).cross(p2 - p0);
        double S = 0.0;
        Vec2 x_node[3];
        double s_node[3];
        for (int i = 0; i < 3; ++i) {
            const auto& b = tq.bary[i];
            x_node[i] = p0 * b[0] + p1 * b[1] + p2 * b[2];
            s_node[i] = std::sqrt(field.evaluate(x_node[i]).det());
            S += tq.weights[i] * s_node[i];
        }
        const double ratio = S * area / targets.area_target;
        if (ratio <= eps.epsilon)
            throw std::runtime_error("gradient: infeasible configuration (infinite cost)");
        const double fp = barrier_fn_deriv(ratio, eps.epsilon);

        const Vec2 dA[3] = {{0.5 * (p1.y - p2.y), 0.5 * (p2.x - p1.x)},
                            {0.5 * (p2.y - p0.y), 0.5 * (p0.x - p2.x)},
                            {0.5 * (p0.y - p1.y), 0.5 * (p1.x - p0.x)}};
        Vec2 dS[3] = {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
        if (!constant) {
            for (int i = 0; i < 3; ++i) {
                const MetricTensor m = field.evaluate(x_node[i]);
                const MetricDerivatives dm = field.derivatives(x_node[i]);
                const double det_dx =
                    dm.dx.m11 * m.m22 + m.m11 * dm.dx.m22 - 2.0 * m.m12 * dm.dx.m12;
                const double det_dy =
                    dm.dy.m11 * m.m22 + m.m11 * dm.dy.m22 - 2.0 * m.m12 * dm.dy.m12;
                const Vec2 ds{det_dx / (2.0 * s_node[i]), det_dy / (2.0 * s_node[i])};
                for (int v = 0; v < 3; ++v) dS[v] += ds * (tq.weights[i] * tq.bary[i][v]);
            }
        }
        for (int v = 0; v < 3; ++v) {
            // d ratio/dp_v = (S dA + A dS)/A_t
            const Vec2 dr = (dA[v] * S + dS[v] * area) / targets.area_target;
            g[st.v[v]] += fp * dr;
        }
    }

    project_constraints(mesh.constraints, g);
    return g;
}

}  // namespace isomesh
