#pragma once

#include <vector>

#include "isomesh/linalg.hpp"
#include "isomesh/metric.hpp"

namespace isomesh {

// Christoffel symbols Gamma^k_ij, symmetric in (i, j).
struct Christoffel {
    // gamma[k][i][j]
    double gamma[2][2][2] = {};
};

struct GeodesicPolyline {
    std::vector<Vec2> points;
    Vec2 initial_velocity{0.0, 0.0};
    double metric_length = 0.0;
    bool left_domain = false;
};

Christoffel christoffel(const MetricField& field, const Vec2& p);

// Classical RK4 on x'' = -Gamma(x)(x', x'), fixed step t_end/n_steps.
GeodesicPolyline geodesic_ivp(const MetricField& field, const Vec2& x0, const Vec2& v0,
                              double t_end, int n_steps);

// Two-point problem by angle shooting around the chord with bisection on the
// signed transverse miss. Throws std::runtime_error if no bracket is found
// within +-60 degrees of the chord.
GeodesicPolyline geodesic_bvp(const MetricField& field, const Vec2& x0, const Vec2& x1,
                              double tol, int n_steps = 200);

// Max Euclidean distance between an edge polyline and the BVP geodesic with
// the same endpoints, both resampled by arc length.
double geodesic_deviation(const std::vector<Vec2>& edge, const MetricField& field, double tol);

}  // namespace isomesh
