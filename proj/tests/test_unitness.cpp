#include <doctest.h>

#include <cmath>

#include "isomesh/unitness.hpp"
#include "test_util.hpp"

using namespace isomesh;
namespace tu = isomesh::testutil;

namespace {

constexpr double kPi = 3.14159265358979323846;

Triangle apply(const Mat2& a, const Triangle& t, const Vec2& shift = {0.0, 0.0}) {
    return {a * t[0] + shift, a * t[1] + shift, a * t[2] + shift};
}

std::array<std::vector<Vec2>, 3> straight_edges(const Triangle& k, int samples = 9) {
    std::array<std::vector<Vec2>, 3> edges;
    for (int e = 0; e < 3; ++e) {
        const Vec2 a = k[e], b = k[(e + 1) % 3];
        for (int s = 0; s <= samples; ++s)
            edges[e].push_back(a + (b - a) * (double(s) / samples));
    }
    return edges;
}

}  // namespace

TEST_CASE("is_unit_linear: examples") {
    const MetricField id = MetricField::constant(MetricTensor::identity());
    const Triangle kd = IdealSimplex::equilateral().vertices;
    CHECK(is_unit_linear(kd, id, 1e-9));

    const MetricField d41 = MetricField::constant(MetricTensor::diag(4.0, 1.0));
    const Triangle k{Vec2{0, 0}, Vec2{0.5, 0}, Vec2{0.25, std::sqrt(3.0) / 2.0}};
    CHECK(is_unit_linear(k, d41, 1e-9));

    const Triangle big = apply(Mat2(2.0, 0.0, 0.0, 2.0), kd);
    CHECK_FALSE(is_unit_linear(big, id, 1e-9));
}

TEST_CASE("check_jacobian_unitness: constant-metric isometric image") {
    const Triangle kd = IdealSimplex::equilateral().vertices;
    for (int i = 0; i < 50; ++i) {
        const MetricTensor m = tu::random_spd();
        const Mat2 r0 = tu::random_rotation();
        const Triangle k =
            apply(sqrt_inverse(m) * r0, kd, {tu::uniform(-2, 2), tu::uniform(-2, 2)});
        const JacobianUnitness ju =
            check_jacobian_unitness(k, MetricField::constant(m), {k[0], k[1], k[2]});
        CHECK(ju.residual < 1e-10);
        CHECK((ju.rotation - r0).frobenius_norm() < 1e-9);
    }
}

TEST_CASE("check_jacobian_unitness: straight ideal triangle under identity") {
    const Triangle kd = IdealSimplex::equilateral().vertices;
    const MetricField id = MetricField::constant(MetricTensor::identity());
    const JacobianUnitness ju = check_jacobian_unitness(kd, id, {kd[0], kd[1], kd[2]});
    CHECK(ju.residual < 1e-12);
    CHECK((ju.rotation - Mat2::identity()).frobenius_norm() < 1e-12);
}

TEST_CASE("check_jacobian_unitness: curved metric, straight triangle not unit") {
    // Unit-edge straight triangle placed where s2 varies: the constant
    // Jacobian cannot match M^{-1/2}(x) R at every sample.
    const MetricField s2 = MetricField::from_id("s2");
    const Triangle k{Vec2{0.5, 0.0}, Vec2{1.5, 0.0}, Vec2{1.0, std::sqrt(3.0) / 2.0}};
    const JacobianUnitness ju = check_jacobian_unitness(k, s2, {k[0], k[1], k[2]});
    CHECK(ju.residual > 0.05);
}

TEST_CASE("check_jacobian_unitness: residual invariant under sample re-choice for unit elements") {
    const Triangle kd = IdealSimplex::equilateral().vertices;
    const MetricTensor m = tu::random_spd();
    const Triangle k = apply(sqrt_inverse(m) * tu::random_rotation(), kd);
    const MetricField f = MetricField::constant(m);
    const double r1 = check_jacobian_unitness(k, f, {k[0], k[1], k[2]}).residual;
    const double r2 = check_jacobian_unitness(k, f, {k[2], k[0], k[1]}).residual;
    CHECK(std::fabs(r1 - r2) < 1e-10);
}

TEST_CASE("classify_qu1: examples") {
    const IdealSimplex kd = IdealSimplex::equilateral();
    for (int i = 0; i < 20; ++i) {
        const MetricTensor m = tu::random_spd();
        const Triangle k = apply(sqrt_inverse(m) * tu::random_rotation(), kd.vertices);
        const Qu1Result r = classify_qu1(k, kd, MetricField::constant(m));
        CHECK(r.pass);
        CHECK(r.quality == doctest::Approx(1.0).epsilon(1e-9));
        for (double ratio : r.edge_ratios) CHECK(ratio == doctest::Approx(1.0).epsilon(1e-9));
    }

    // Mild uniform stretch: quality stays high but ratios move inside the window.
    const MetricField id = MetricField::constant(MetricTensor::identity());
    const Triangle mild = apply(Mat2(1.2, 0.0, 0.0, 1.2), kd.vertices);
    const Qu1Result rm = classify_qu1(mild, kd, id);
    CHECK(rm.pass);
    CHECK(rm.quality == doctest::Approx(1.0).epsilon(1e-9));
    for (double ratio : rm.edge_ratios) CHECK(ratio == doctest::Approx(1.2).epsilon(1e-9));

    // Strong anisotropic squash: quality below a = 0.8 -> fail.
    const Triangle squash = apply(Mat2(1.0, 0.0, 0.0, 0.45), kd.vertices);
    const Qu1Result rs = classify_qu1(squash, kd, id);
    CHECK(rs.quality < 0.8);
    CHECK_FALSE(rs.pass);

    // Inverted triangle: quality 0.
    const Triangle inv{kd.vertices[0], kd.vertices[2], kd.vertices[1]};
    const Qu1Result ri = classify_qu1(inv, kd, id);
    CHECK(ri.quality == 0.0);
    CHECK_FALSE(ri.pass);

    // Edge ratio outside [1/sqrt2, sqrt2] -> fail even with decent quality.
    const Triangle wide = apply(Mat2(1.5, 0.0, 0.0, 1.5), kd.vertices);
    const Qu1Result rw = classify_qu1(wide, kd, id);
    CHECK_FALSE(rw.pass);
}

TEST_CASE("classify_qu1: verdict invariant under vertex relabeling") {
    const IdealSimplex kd = IdealSimplex::equilateral();
    const MetricField id = MetricField::constant(MetricTensor::identity());
    const Triangle k = apply(Mat2(1.15, 0.1, 0.0, 0.95), kd.vertices);
    const bool base = classify_qu1(k, kd, id).pass;
    const Triangle rot1{k[1], k[2], k[0]};
    const Triangle rot2{k[2], k[0], k[1]};
    CHECK(classify_qu1(rot1, kd, id).pass == base);
    CHECK(classify_qu1(rot2, kd, id).pass == base);
}

TEST_CASE("classify_qu2: straight unit equilateral triangle under identity passes") {
    const IdealSimplex kd = IdealSimplex::equilateral();
    const MetricField id = MetricField::constant(MetricTensor::identity());
    const Qu2Result r = classify_qu2(straight_edges(kd.vertices), kd, id);
    CHECK(r.verdict == Verdict::Pass);
    for (double d : r.geodesic_deviations) CHECK(d < 1e-8);
    for (double a : r.angle_offsets) CHECK(std::fabs(a) < 1e-9);
}

TEST_CASE("classify_qu2: constant-metric isometric image passes") {
    const IdealSimplex kd = IdealSimplex::equilateral();
    const MetricTensor m = tu::random_spd();
    const Triangle k = apply(sqrt_inverse(m) * tu::random_rotation(), kd.vertices);
    const Qu2Result r = classify_qu2(straight_edges(k), kd, MetricField::constant(m));
    CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("classify_qu2: 95-degree vertex angle fails the 60 +- 30 window") {
    const IdealSimplex kd = IdealSimplex::equilateral();
    const MetricField id = MetricField::constant(MetricTensor::identity());
    const double apex = 95.0 * kPi / 180.0;
    // Isoceles with unit flanks and a 95 degree apex at vertex 0.
    const Triangle k{Vec2{0, 0}, Vec2{std::cos(-apex / 2), std::sin(-apex / 2)},
                     Vec2{std::cos(apex / 2), std::sin(apex / 2)}};
    const Qu2Result r = classify_qu2(straight_edges(k), kd, id);
    CHECK(r.verdict == Verdict::Fail);
    double worst = 0.0;
    for (double a : r.angle_offsets) worst = std::max(worst, std::fabs(a));
    CHECK(worst > kPi / 6.0);  // the 95 degree corner is 35 degrees off ideal
}

TEST_CASE("implication chain on constant-metric isometric images") {
    const IdealSimplex kd = IdealSimplex::equilateral();
    for (int i = 0; i < 30; ++i) {
        const MetricTensor m = tu::random_spd();
        const MetricField f = MetricField::constant(m);
        const Triangle k = apply(sqrt_inverse(m) * tu::random_rotation(), kd.vertices,
                                 {tu::uniform(-1, 1), tu::uniform(-1, 1)});

        const JacobianUnitness ju = check_jacobian_unitness(k, f, {k[0], k[1], k[2]});
        REQUIRE(ju.residual < 1e-10);
        CHECK(is_unit_linear(k, f, 1e-8));
        CHECK(classify_qu1(k, kd, f).pass);
        CHECK(classify_qu2(straight_edges(k), kd, f).verdict == Verdict::Pass);
    }
}
