#include <doctest.h>

#include <cmath>

#include "isomesh/measures.hpp"
#include "test_util.hpp"

using namespace isomesh;
namespace tu = isomesh::testutil;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt3 = 1.7320508075688772;

Triangle apply(const Mat2& a, const Triangle& t, const Vec2& shift = {0.0, 0.0}) {
    return {a * t[0] + shift, a * t[1] + shift, a * t[2] + shift};
}

}  // namespace

TEST_CASE("ideal simplices") {
    const IdealSimplex eq = IdealSimplex::equilateral();
    CHECK(eq.euclidean_area == doctest::Approx(kSqrt3 / 4.0).epsilon(1e-15));
    CHECK((eq.vertices[2] - Vec2{0.5, kSqrt3 / 2.0}).norm() < 1e-15);
    const IdealSimplex rt = IdealSimplex::right();
    CHECK(rt.euclidean_area == doctest::Approx(0.5).epsilon(1e-15));
    const IdealSimplex half = eq.scaled(0.5);
    CHECK(half.euclidean_area == doctest::Approx(kSqrt3 / 16.0).epsilon(1e-12));
}

TEST_CASE("gauss-legendre quadrature integrates polynomials exactly") {
    for (int npts : {2, 4, 8, 16}) {
        const Quadrature1D q = Quadrature1D::gauss_legendre(npts);
        double wsum = 0.0;
        for (double w : q.weights) wsum += w;
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
        // Exact up to degree 2*npts - 1; check x^3 -> 1/4.
        double cube = 0.0;
        for (int i = 0; i < npts; ++i) cube += q.weights[i] * std::pow(q.nodes[i], 3);
        CHECK(cube == doctest::Approx(0.25).epsilon(1e-13));
    }
}

TEST_CASE("segment_length_midpoint: examples") {
    const MetricField d41 = MetricField::constant(MetricTensor::diag(4.0, 1.0));
    CHECK(segment_length_midpoint({0, 0}, {1, 0}, d41) == doctest::Approx(2.0).epsilon(1e-14));

    const MetricField id = MetricField::constant(MetricTensor::identity());
    CHECK(segment_length_midpoint({0, 0}, {0, 1}, id) == doctest::Approx(1.0).epsilon(1e-14));

    const MetricField s2 = MetricField::from_id("s2");
    CHECK(segment_length_midpoint({0, 0}, {1, 0}, s2) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("segment_length_quadrature: constant metrics exact, self-convergence") {
    const MetricField c = MetricField::constant({3.0, 0.5, 2.0});
    const Vec2 p0{-0.3, 0.2}, p1{0.9, 1.4};
    const Vec2 e = p1 - p0;
    const double exact = std::sqrt(c.evaluate(p0).quad(e));
    CHECK(segment_length_quadrature(p0, p1, c, 4) == doctest::Approx(exact).epsilon(1e-14));
    CHECK(segment_length_quadrature(p0, p1, c, 32) == doctest::Approx(exact).epsilon(1e-12));

    const MetricField s2 = MetricField::from_id("s2");
    const double l16 = segment_length_quadrature({0, 0}, {1, 0}, s2, 16);
    const double l32 = segment_length_quadrature({0, 0}, {1, 0}, s2, 32);
    CHECK(std::fabs(l16 - l32) < 1e-10);

    const MetricField id = MetricField::constant(MetricTensor::identity());
    CHECK(segment_length_quadrature({1, 1}, {4, 5}, id, 8) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("quadrature lengths on catalog fields self-converge") {
    // Subedge-scale segments, where these rules are actually used.
    for (const char* fid : {"s2", "s3", "s5", "s6"}) {
        CAPTURE(fid);
        const MetricField f = MetricField::from_id(fid);
        const Vec2 p0{-0.05, 0.21}, p1{0.06, 0.27};
        const double l32 = segment_length_quadrature(p0, p1, f, 32);
        const double l64 = segment_length_quadrature(p0, p1, f, 64);
        CHECK(std::fabs(l32 - l64) < 1e-10);
    }
}

TEST_CASE("edge_energy: examples") {
    const MetricField id = MetricField::constant(MetricTensor::identity());
    CHECK(edge_energy({0, 0}, {1, 0}, id, 8) == doctest::Approx(0.5).epsilon(1e-14));
    const MetricField d41 = MetricField::constant(MetricTensor::diag(4.0, 1.0));
    CHECK(edge_energy({0, 0}, {1, 0}, d41, 8) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(edge_energy({0.3, 0.7}, {0.3, 0.7}, d41, 8) == doctest::Approx(0.0));
}

TEST_CASE("triangle_area_metric: examples") {
    const Triangle tri{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
    const MetricField id = MetricField::constant(MetricTensor::identity());
    CHECK(triangle_area_metric(tri, id) == doctest::Approx(0.5).epsilon(1e-14));
    const MetricField d41 = MetricField::constant(MetricTensor::diag(4.0, 1.0));
    CHECK(triangle_area_metric(tri, d41) == doctest::Approx(1.0).epsilon(1e-14));
    const Triangle cw{Vec2{0, 0}, Vec2{0, 1}, Vec2{1, 0}};
    CHECK(triangle_area_metric(cw, id) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("inner_angle: examples") {
    CHECK(inner_angle({1, 0}, {0, 1}, MetricTensor::identity()) ==
          doctest::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(inner_angle({0.4, -1.2}, {0.4, -1.2}, tu::random_spd()) ==
          doctest::Approx(0.0).epsilon(1e-7));
    CHECK(inner_angle({1, 0}, {1, 1}, MetricTensor::diag(1.0, 3.0)) ==
          doctest::Approx(kPi / 3.0).epsilon(1e-14));
    CHECK_THROWS(inner_angle({0, 0}, {1, 0}, MetricTensor::identity()));
}

TEST_CASE("affine_jacobian: examples") {
    const Triangle k = {Vec2{0.1, 0.2}, Vec2{1.3, 0.4}, Vec2{0.6, 1.8}};
    const Mat2 jid = affine_jacobian(k, k);
    CHECK((jid - Mat2::identity()).frobenius_norm() < 1e-12);

    const Mat2 jtri = affine_jacobian(IdealSimplex::right().vertices,
                                      IdealSimplex::equilateral().vertices);
    CHECK(jtri.a == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(jtri.b == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(jtri.c == doctest::Approx(0.0));
    CHECK(jtri.d == doctest::Approx(kSqrt3 / 2.0).epsilon(1e-14));

    Triangle k2 = apply(Mat2(2.0, 0.0, 0.0, 2.0), k);
    const Mat2 j1 = affine_jacobian(k, IdealSimplex::equilateral().vertices);
    const Mat2 j2 = affine_jacobian(k2, IdealSimplex::equilateral().vertices);
    CHECK((j2 * 2.0 - j1).frobenius_norm() < 1e-12);

    const Triangle degen{Vec2{0, 0}, Vec2{1, 1}, Vec2{2, 2}};
    CHECK_THROWS(affine_jacobian(degen, k));
}

TEST_CASE("affine_jacobian maps edge vectors exactly") {
    for (int i = 0; i < 20; ++i) {
        const Triangle src{Vec2{tu::uniform(-1, 1), tu::uniform(-1, 1)},
                           Vec2{tu::uniform(1.5, 3), tu::uniform(-1, 1)},
                           Vec2{tu::uniform(-1, 1), tu::uniform(1.5, 3)}};
        const Triangle dst{Vec2{tu::uniform(-1, 1), tu::uniform(-1, 1)},
                           Vec2{tu::uniform(1.5, 3), tu::uniform(-1, 1)},
                           Vec2{tu::uniform(-1, 1), tu::uniform(1.5, 3)}};
        const Mat2 j = affine_jacobian(src, dst);
        for (int k = 0; k < 3; ++k) {
            const Vec2 es = src[(k + 1) % 3] - src[k];
            const Vec2 ed = dst[(k + 1) % 3] - dst[k];
            CHECK((j * es - ed).norm() < 1e-10);
        }
    }
}

TEST_CASE("distortion_pointwise: examples and AM-GM") {
    CHECK(distortion_pointwise(Mat2::identity(), MetricTensor::identity()) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(distortion_pointwise(Mat2::identity(), MetricTensor::diag(2.0, 0.5)) ==
          doctest::Approx(1.25).epsilon(1e-14));
    CHECK(std::isinf(distortion_pointwise(Mat2(1.0, 2.0, 2.0, 4.0), MetricTensor::identity())));

    for (int i = 0; i < 200; ++i) {
        const MetricTensor m = tu::random_spd();
        const Mat2 j = sqrt_inverse(m) * tu::random_rotation();
        CHECK(std::fabs(distortion_pointwise(j, m) - 1.0) < 1e-12);
        const Mat2 jr(tu::uniform(-2, 2), tu::uniform(-2, 2), tu::uniform(-2, 2),
                      tu::uniform(-2, 2));
        if (std::fabs(jr.det()) > 1e-6) CHECK(distortion_pointwise(jr, m) >= 1.0 - 1e-12);
    }
}

TEST_CASE("quality_element: examples") {
    const TriangleQuadrature quad = TriangleQuadrature::degree2();
    const Triangle kd = IdealSimplex::equilateral().vertices;
    const MetricField id = MetricField::constant(MetricTensor::identity());
    CHECK(quality_element(kd, kd, id, quad) == doctest::Approx(1.0).epsilon(1e-14));

    for (int i = 0; i < 50; ++i) {
        const MetricTensor m = tu::random_spd();
        const MetricField f = MetricField::constant(m);
        const Triangle k =
            apply(sqrt_inverse(m), kd, {tu::uniform(-3, 3), tu::uniform(-3, 3)});
        CHECK(quality_element(k, kd, f, quad) == doctest::Approx(1.0).epsilon(1e-10));
    }

    const Triangle khat = IdealSimplex::right().vertices;
    CHECK(quality_element(khat, kd, id, quad) ==
          doctest::Approx(kSqrt3 / 2.0).epsilon(1e-12));

    const Triangle inverted{Vec2{0, 0}, Vec2{0, 1}, Vec2{1, 0}};
    CHECK(quality_element(inverted, kd, id, quad) == 0.0);
}

TEST_CASE("quality_element: rigid-motion invariance under transported metric") {
    const TriangleQuadrature quad = TriangleQuadrature::degree2();
    const Triangle kd = IdealSimplex::equilateral().vertices;
    for (int i = 0; i < 50; ++i) {
        const MetricTensor m = tu::random_spd();
        const Triangle k{Vec2{tu::uniform(-1, 1), tu::uniform(-1, 1)},
                         Vec2{tu::uniform(1.2, 2), tu::uniform(-1, 1)},
                         Vec2{tu::uniform(-1, 1), tu::uniform(1.2, 2)}};
        const double q = quality_element(k, kd, MetricField::constant(m), quad);

        // Translation: invariant (up to rounding in the shifted edge vectors).
        const Vec2 shift{tu::uniform(-5, 5), tu::uniform(-5, 5)};
        const Triangle kt{k[0] + shift, k[1] + shift, k[2] + shift};
        CHECK(quality_element(kt, kd, MetricField::constant(m), quad) ==
              doctest::Approx(q).epsilon(1e-12));

        // Rotation with metric transported M -> R^T M R applied to R k.
        const Mat2 r = tu::random_rotation();
        const Triangle kr = apply(r, k);
        const MetricTensor mr = pullback(r, m);  // rotating k, pull the metric back by R
        const double qr =
            quality_element(k, kd, MetricField::constant(mr), quad);
        const double qk = quality_element(kr, kd, MetricField::constant(m), quad);
        CHECK(std::fabs(qr - qk) < 1e-10);
    }
}

TEST_CASE("linear unit invariants for constant metrics") {
    const Triangle kd = IdealSimplex::equilateral().vertices;
    for (int i = 0; i < 100; ++i) {
        const MetricTensor m = tu::random_spd();
        const Mat2 minv_half = sqrt_inverse(m);
        const Mat2 j = minv_half * tu::random_rotation();
        const Triangle k = apply(j, kd, {tu::uniform(-2, 2), tu::uniform(-2, 2)});

        for (int v = 0; v < 3; ++v) {
            const Vec2 u = k[(v + 1) % 3] - k[v];
            const Vec2 w = k[(v + 2) % 3] - k[v];
            CHECK(std::fabs(inner_angle(u, w, m) - kPi / 3.0) < 1e-9);
        }
        CHECK(std::fabs(triangle_area_metric(k, MetricField::constant(m)) - kSqrt3 / 4.0) <
              1e-10);

        const MetricTensor h = tu::random_symmetric();
        double lhs = 0.0;
        for (int v = 0; v < 3; ++v) lhs += h.quad(k[(v + 1) % 3] - k[v]);
        const Mat2 t = minv_half * h.as_mat() * minv_half;
        CHECK(std::fabs(lhs - 1.5 * t.trace()) < 1e-9);
    }
}
