#include <doctest.h>

#include <cmath>

#include "isomesh/errors.hpp"
#include "isomesh/metric.hpp"
#include "test_util.hpp"

using namespace isomesh;
namespace tu = isomesh::testutil;

TEST_CASE("evaluate: catalog values") {
    const MetricField s1 = MetricField::from_id("s1");
    const MetricTensor m1 = s1.evaluate({0.3, -0.7});
    CHECK(m1.m11 == doctest::Approx(2.0));
    CHECK(m1.m12 == doctest::Approx(0.0));
    CHECK(m1.m22 == doctest::Approx(1.0));

    const MetricField id = MetricField::constant(MetricTensor::identity());
    const MetricTensor mi = id.evaluate({5.0, 5.0});
    CHECK(mi.m11 == 1.0);
    CHECK(mi.m12 == 0.0);
    CHECK(mi.m22 == 1.0);

    const MetricField s5 = MetricField::from_id("s5");
    const MetricTensor m5 = s5.evaluate({1.0, 0.0});
    CHECK(m5.m11 == doctest::Approx(5.0));
    CHECK(m5.m12 == doctest::Approx(0.0));
    CHECK(m5.m22 == doctest::Approx(1.0));
}

TEST_CASE("evaluate: domain and degeneracy errors for s4") {
    const MetricField s4 = MetricField::from_id("s4");
    CHECK_NOTHROW(s4.evaluate({0.5, 0.0}));
    CHECK_THROWS_AS(s4.evaluate({-1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(s4.evaluate({0.0, 0.0}), DegeneracyError);
}

TEST_CASE("derivatives: catalog values") {
    const MetricField c = MetricField::constant({3.0, 1.0, 2.0});
    const MetricDerivatives dc = c.derivatives({0.2, 0.9});
    CHECK(tu::tensor_max_abs(dc.dx) == 0.0);
    CHECK(tu::tensor_max_abs(dc.dy) == 0.0);

    const MetricDerivatives d1 = MetricField::from_id("s1").derivatives({-2.0, 4.0});
    CHECK(tu::tensor_max_abs(d1.dx) == 0.0);
    CHECK(tu::tensor_max_abs(d1.dy) == 0.0);

    const MetricDerivatives d2 = MetricField::from_id("s2").derivatives({1.0, 0.0});
    CHECK(d2.dx.m11 == doctest::Approx(8.0));
    CHECK(d2.dx.m12 == doctest::Approx(0.0));
    CHECK(d2.dx.m22 == doctest::Approx(0.0));
    CHECK(tu::tensor_max_abs(d2.dy) == doctest::Approx(0.0));
}

TEST_CASE("derivatives: s6 kink flagged, sign(0) convention") {
    MetricField s6 = MetricField::from_id("s6");
    // 10y - cos(2 pi x) = 0 at x = 0, y = 0.1.
    const MetricDerivatives d = s6.derivatives({0.0, 0.1});
    CHECK(d.nonsmooth);
    // Off the locus the field is smooth.
    CHECK_FALSE(s6.derivatives({0.0, 0.5}).nonsmooth);
    // The smoothed variant has no kink anywhere.
    s6.set_smooth_abs(true);
    CHECK_FALSE(s6.derivatives({0.0, 0.1}).nonsmooth);
}

TEST_CASE("evaluate/derivatives: property over catalog fields") {
    struct Probe {
        const char* id;
        Rectangle box;
    };
    const Probe probes[] = {
        {"s1", {-2.0, 2.0, -2.0, 2.0}}, {"s2", {-2.0, 2.0, -2.0, 2.0}},
        {"s3", {-1.0, 1.0, -1.0, 1.0}}, {"s4", {0.1, 0.9, -2.0, 2.0}},
        {"s5", {-2.0, 2.0, -2.0, 2.0}}, {"s6", {-1.0, 1.0, -1.0, 1.0}},
    };
    for (const Probe& probe : probes) {
        CAPTURE(probe.id);
        const MetricField f = MetricField::from_id(probe.id);
        int checked = 0;
        for (int trial = 0; checked < 100; ++trial) {
            REQUIRE(trial < 10000);
            const Vec2 p{tu::uniform(probe.box.x0, probe.box.x1),
                         tu::uniform(probe.box.y0, probe.box.y1)};
            const MetricTensor m = f.evaluate(p);
            CHECK(m.positive_definite());
            const MetricDerivatives an = f.derivatives(p);
            if (an.nonsmooth) continue;
            // Keep finite differences away from the s6 kink.
            if (f.kind() == MetricField::Kind::S6) {
                const double g = 10.0 * p.y - std::cos(2.0 * 3.14159265358979323846 * p.x);
                if (std::fabs(g) < 1e-3) continue;
            }
            const MetricDerivatives fd = tu::fd_derivatives(f, p);
            CHECK(tu::deriv_rel_error(an, fd) < 1e-6);
            ++checked;
        }
    }
}

TEST_CASE("sqrt_inverse: examples and residual") {
    const Mat2 s1 = sqrt_inverse(MetricTensor::diag(4.0, 1.0));
    CHECK(s1.a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s1.b == doctest::Approx(0.0));
    CHECK(s1.c == doctest::Approx(0.0));
    CHECK(s1.d == doctest::Approx(1.0).epsilon(1e-12));

    const Mat2 si = sqrt_inverse(MetricTensor::identity());
    CHECK((si - Mat2::identity()).frobenius_norm() < 1e-14);

    const MetricTensor m{2.0, 1.0, 2.0};
    const Mat2 s = sqrt_inverse(m);
    const Mat2 res = s * m.as_mat() * s - Mat2::identity();
    CHECK(res.frobenius_norm() < 1e-12);

    CHECK_THROWS_AS(sqrt_inverse(MetricTensor{1.0, 2.0, 1.0}), DegeneracyError);
}

TEST_CASE("sqrt_spd squares back to the input") {
    for (int i = 0; i < 50; ++i) {
        const MetricTensor m = tu::random_spd();
        const Mat2 r = sqrt_spd(m);
        const Mat2 sq = r * r;
        CHECK(std::fabs(sq.a - m.m11) < 1e-11);
        CHECK(std::fabs(sq.b - m.m12) < 1e-11);
        CHECK(std::fabs(sq.d - m.m22) < 1e-11);
    }
}

TEST_CASE("pullback: examples") {
    const MetricTensor n{1.5, -0.4, 2.5};
    const MetricTensor p0 = pullback(Mat2::identity(), n);
    CHECK(p0.m11 == n.m11);
    CHECK(p0.m12 == n.m12);
    CHECK(p0.m22 == n.m22);

    const MetricTensor p1 = pullback(Mat2(2.0, 0.0, 0.0, 1.0), MetricTensor::identity());
    CHECK(p1.m11 == doctest::Approx(4.0));
    CHECK(p1.m12 == doctest::Approx(0.0));
    CHECK(p1.m22 == doctest::Approx(1.0));
}

TEST_CASE("pullback of M by M^{-1/2} R is the identity") {
    for (int i = 0; i < 200; ++i) {
        const MetricTensor m = tu::random_spd();
        const Mat2 j = sqrt_inverse(m) * tu::random_rotation();
        const MetricTensor p = pullback(j, m);
        CHECK(std::fabs(p.m11 - 1.0) < 1e-12);
        CHECK(std::fabs(p.m12) < 1e-12);
        CHECK(std::fabs(p.m22 - 1.0) < 1e-12);
    }
}

TEST_CASE("anisotropic_quotient: examples and scale invariance") {
    CHECK(anisotropic_quotient(MetricTensor::identity()) == doctest::Approx(1.0));
    CHECK(anisotropic_quotient(MetricTensor::diag(4.0, 1.0)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(anisotropic_quotient(MetricTensor::diag(7.25, 7.25)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 100; ++i) {
        const MetricTensor m = tu::random_spd();
        const double c = tu::uniform(0.1, 10.0);
        CHECK(std::fabs(anisotropic_quotient(m) - anisotropic_quotient(m * c)) < 1e-12);
        CHECK(anisotropic_quotient(m) >= 1.0 - 1e-14);
    }
}
