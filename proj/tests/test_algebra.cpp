#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "semiquat/metric.hpp"
#include "semiquat/quaternion.hpp"
#include "test_support.hpp"

using namespace semiquat;
using testsup::random_quat;
using testsup::ref_mul;

namespace {
const MetricContext kDefault;
const MetricContext kAlt = metric_paper24();
}

TEST_CASE("product matches the basis-table expansion") {
    std::mt19937 rng(11);
    for (const MetricContext& ctx : {kDefault, kAlt}) {
        for (int i = 0; i < 200; ++i) {
            const SemiQuaternion p = random_quat(rng), q = random_quat(rng);
            CHECK(linf(quat_mul(p, q, ctx) - ref_mul(p, q, ctx)) <= 1e-12);
        }
    }
}

TEST_CASE("product is bilinear") {
    std::mt19937 rng(12);
    for (int i = 0; i < 100; ++i) {
        const SemiQuaternion p = random_quat(rng), p2 = random_quat(rng), q = random_quat(rng);
        const double a = 1.7, b = -0.4;
        const SemiQuaternion left = quat_mul(a * p + b * p2, q, kDefault);
        const SemiQuaternion right =
            a * quat_mul(p, q, kDefault) + b * quat_mul(p2, q, kDefault);
        CHECK(linf(left - right) <= 1e-12);
        const SemiQuaternion left2 = quat_mul(q, a * p + b * p2, kDefault);
        const SemiQuaternion right2 =
            a * quat_mul(q, p, kDefault) + b * quat_mul(q, p2, kDefault);
        CHECK(linf(left2 - right2) <= 1e-12);
    }
}

TEST_CASE("product is associative when the spatial signs multiply to +1") {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        const SemiQuaternion p = random_quat(rng), q = random_quat(rng), r = random_quat(rng);
        const SemiQuaternion left = quat_mul(quat_mul(p, q, kDefault), r, kDefault);
        const SemiQuaternion right = quat_mul(p, quat_mul(q, r, kDefault), kDefault);
        CHECK(linf(left - right) <= 1e-10);
    }

    // spatial signs (+1,+1,-1) multiply to -1, and the same table is then
    // genuinely non-associative: (e1 e1) e2 = -e2 but e1 (e1 e2) = +e2
    const SemiQuaternion e1{1, 0, 0, 0}, e2{0, 1, 0, 0};
    const SemiQuaternion left = quat_mul(quat_mul(e1, e1, kAlt), e2, kAlt);
    const SemiQuaternion right = quat_mul(e1, quat_mul(e1, e2, kAlt), kAlt);
    CHECK(linf(left + right) == 0.0);
    CHECK(linf(left - right) == 2.0);
}

TEST_CASE("product is not commutative") {
    const SemiQuaternion e1{1, 0, 0, 0}, e2{0, 1, 0, 0};
    const SemiQuaternion pq = quat_mul(e1, e2, kDefault), qp = quat_mul(e2, e1, kDefault);
    CHECK(linf(pq - qp) > 1.0);
}

TEST_CASE("conjugation") {
    CHECK(linf(conjugate({1, 2, 3, 4}) - SemiQuaternion{-1, -2, -3, 4}) == 0.0);
    const SemiQuaternion spatial{1, 2, 3, 0};
    CHECK(linf(conjugate(spatial) + spatial) == 0.0);
    const SemiQuaternion temporal{0, 0, 0, 4};
    CHECK(linf(conjugate(temporal) - temporal) == 0.0);

    std::mt19937 rng(14);
    for (int i = 0; i < 100; ++i) {
        const SemiQuaternion p = random_quat(rng), q = random_quat(rng);
        // anti-homomorphism: conj(pq) = conj(q) conj(p)
        const SemiQuaternion left = conjugate(quat_mul(p, q, kDefault));
        const SemiQuaternion right = quat_mul(conjugate(q), conjugate(p), kDefault);
        CHECK(linf(left - right) <= 1e-12);
    }
}

TEST_CASE("q times conj(q) lands on the scalar axis") {
    std::mt19937 rng(15);
    for (const MetricContext& ctx : {kDefault, kAlt}) {
        for (int i = 0; i < 100; ++i) {
            const SemiQuaternion q = random_quat(rng);
            const SemiQuaternion prod = quat_mul(q, conjugate(q), ctx);
            // the scalar is h(q,q) + (1 - eps4) q4^2; the correction term
            // vanishes exactly when the temporal sign is +1
            const double want =
                inner_h(q, q, ctx) + (1.0 - ctx.ambient_signs[3]) * q.q4 * q.q4;
            CHECK(std::abs(prod.q4 - want) <= 1e-12);
            CHECK(std::abs(prod.q1) + std::abs(prod.q2) + std::abs(prod.q3) <= 1e-12);
        }
    }
}

TEST_CASE("unit non-null q times conj(q) is its causal sign") {
    std::mt19937 rng(16);
    int checked = 0;
    while (checked < 50) {
        SemiQuaternion q = random_quat(rng);
        const double h = inner_h(q, q, kDefault);
        if (std::abs(h) < 0.1) continue;
        q = q / std::sqrt(std::abs(h));
        const SemiQuaternion prod = quat_mul(q, conjugate(q), kDefault);
        const double eps = causal_sign(q, kDefault).value;
        CHECK(std::abs(prod.q4 - eps) <= 1e-10);
        ++checked;
    }
}

TEST_CASE("symmetrized conjugate product recovers the inner product") {
    std::mt19937 rng(17);
    for (int i = 0; i < 100; ++i) {
        const SemiQuaternion p = random_quat(rng), q = random_quat(rng);
        const SemiQuaternion sym =
            0.5 * (quat_mul(p, conjugate(q), kDefault) + quat_mul(q, conjugate(p), kDefault));
        CHECK(std::abs(sym.q4 - inner_h(p, q, kDefault)) <= 1e-12);
        CHECK(std::abs(sym.q1) + std::abs(sym.q2) + std::abs(sym.q3) <= 1e-12);
    }
}

TEST_CASE("norm form") {
    CHECK(norm_N({0, 0, 0, 1}, kDefault) == 1.0);
    CHECK(norm_N({1, 1, 1, 1}, kDefault) == 0.0);  // two + and two - cancel
    for (double s : {-1.0, 0.0, 0.7})
        CHECK(norm_N(testsup::example_N(s), kDefault) == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937 rng(18);
    for (int i = 0; i < 100; ++i) {
        const SemiQuaternion q = random_quat(rng);
        const double n = norm_N(q, kDefault);
        CHECK(n * n == doctest::Approx(std::abs(inner_h(q, q, kDefault))).epsilon(1e-14));
        // multiplicativity: h(pq,pq) = h(p,p) h(q,q)
        const SemiQuaternion p = random_quat(rng);
        const SemiQuaternion pq = quat_mul(p, q, kDefault);
        CHECK(inner_h(pq, pq, kDefault)
              == doctest::Approx(inner_h(p, p, kDefault) * inner_h(q, q, kDefault))
                     .epsilon(1e-12));
    }
}

TEST_CASE("inner product basis cases and calibration") {
    const SemiQuaternion e1{1, 0, 0, 0};
    CHECK(inner_h(e1, e1, kDefault) == -1.0);
    CHECK(inner_h(e1, e1, kAlt) == +1.0);
    // tangent of the builtin example at s = 0 is unit timelike
    CHECK(inner_h(testsup::example_T(0), testsup::example_T(0), kDefault)
          == doctest::Approx(-1.0).epsilon(1e-12));

    std::mt19937 rng(19);
    for (int i = 0; i < 50; ++i) {
        const SemiQuaternion p = random_quat(rng), q = random_quat(rng);
        CHECK(inner_h(p, q, kDefault) == inner_h(q, p, kDefault));
    }
}

TEST_CASE("flipping every ambient sign negates h and preserves norms") {
    std::mt19937 rng(20);
    MetricContext flipped;
    flipped.ambient_signs = {+1, +1, -1, -1};
    flipped.spatial_signs = {+1, +1, -1};
    flipped.validate();
    for (int i = 0; i < 100; ++i) {
        const SemiQuaternion p = random_quat(rng), q = random_quat(rng);
        CHECK(inner_h(p, q, flipped) == doctest::Approx(-inner_h(p, q, kDefault)).epsilon(1e-14));
        CHECK(norm_N(p, flipped) == doctest::Approx(norm_N(p, kDefault)).epsilon(1e-14));
        CHECK((classify(p, flipped) == Causality::Null)
              == (classify(p, kDefault) == Causality::Null));
    }
}

TEST_CASE("classification") {
    CHECK(classify({0, 0, 0, 1}, kDefault) == Causality::Spacelike);
    CHECK(classify({1, 0, 0, 0}, kDefault) == Causality::Timelike);
    CHECK(classify({1, 1, 1, 1}, kDefault) == Causality::Null);
    CHECK(classify({1, 0, 0, 0}, kAlt) == Causality::Spacelike);
    CHECK(causal_sign({0, 0, 0, 1}, kDefault).value == +1);
    CHECK(causal_sign({1, 0, 0, 0}, kDefault).value == -1);
    CHECK_THROWS_AS((void)causal_sign({1, 1, 1, 1}, kDefault), NullQuaternionError);
    CHECK_THROWS_AS((void)classify({1, 0, 0, 0}, kDefault, 0.0), ConfigError);
}

TEST_CASE("decomposition into temporal and spatial halves") {
    const SemiQuaternion q{1, 2, 3, 4};
    const auto [temporal, spatial] = decompose(q);
    CHECK(linf(temporal - SemiQuaternion{0, 0, 0, 4}) == 0.0);
    CHECK(linf(spatial - SemiQuaternion{1, 2, 3, 0}) == 0.0);
    CHECK(linf(temporal + spatial - q) == 0.0);
    CHECK(is_spatial(spatial, kDefault));
    CHECK(!is_spatial(q, kDefault));
}

TEST_CASE("spatial product splits into the spatial form and the cross product") {
    std::mt19937 rng(21);
    for (const MetricContext& ctx : {kDefault, kAlt}) {
        for (int i = 0; i < 100; ++i) {
            SemiQuaternion u = random_quat(rng), v = random_quat(rng);
            u.q4 = v.q4 = 0.0;
            const SemiQuaternion prod = quat_mul(u, v, ctx);
            const SemiQuaternion cr = cross3(u, v, ctx);
            // scalar part carries -g(u,v); vector part is the cross product
            CHECK(std::abs(prod.q4 + inner_g(u, v, ctx)) <= 1e-12);
            CHECK(linf((prod - SemiQuaternion{0, 0, 0, prod.q4}) - cr) <= 1e-12);
            CHECK(std::abs(inner_g(cr, u, ctx)) <= 1e-10);
            CHECK(std::abs(inner_g(cr, v, ctx)) <= 1e-10);
        }
    }
    const SemiQuaternion u{0.3, -1.2, 0.8, 0.0};
    CHECK(linf(cross3(u, u, kDefault)) == 0.0);
    CHECK_THROWS_AS((void)cross3({1, 0, 0, 0.5}, u, kDefault), NonSpatialInput);
}

TEST_CASE("triple wedge") {
    std::mt19937 rng(22);
    for (int i = 0; i < 100; ++i) {
        const SemiQuaternion a = random_quat(rng), b = random_quat(rng), c = random_quat(rng);
        const SemiQuaternion x = wedge4(a, b, c, kDefault);
        CHECK(std::abs(inner_h(x, a, kDefault)) <= 1e-10);
        CHECK(std::abs(inner_h(x, b, kDefault)) <= 1e-10);
        CHECK(std::abs(inner_h(x, c, kDefault)) <= 1e-10);
        // defining property: h(X, w) = orientation * det(a, b, c, w)
        const SemiQuaternion w = random_quat(rng);
        CHECK(inner_h(x, w, kDefault) == doctest::Approx(det4(a, b, c, w)).epsilon(1e-10));
    }

    SUBCASE("degenerate triple") {
        const SemiQuaternion a = random_quat(rng), b = random_quat(rng);
        CHECK(linf(wedge4(a, b, 2.0 * a - 0.5 * b, kDefault)) <= 1e-12);
    }
    SUBCASE("orientation flip negates the wedge") {
        MetricContext rev = kDefault;
        rev.orientation = -1;
        const SemiQuaternion a = random_quat(rng), b = random_quat(rng), c = random_quat(rng);
        CHECK(linf(wedge4(a, b, c, rev) + wedge4(a, b, c, kDefault)) <= 1e-12);
    }
    SUBCASE("row swap negates the determinant") {
        const SemiQuaternion a = random_quat(rng), b = random_quat(rng), c = random_quat(rng),
                             d = random_quat(rng);
        CHECK(det4(a, b, c, d) == doctest::Approx(-det4(b, a, c, d)).epsilon(1e-12));
    }
    SUBCASE("example frame wedge points along the scalar axis") {
        // third derivative of the example curve at s = 0 is (0, 0, 1, 0)
        const SemiQuaternion x = wedge4(testsup::example_T(0), testsup::example_N(0),
                                        SemiQuaternion{0, 0, 1, 0}, kDefault);
        CHECK(std::abs(x.q1) <= 1e-12);
        CHECK(std::abs(x.q2) <= 1e-12);
        CHECK(std::abs(x.q3) <= 1e-12);
        CHECK(std::abs(x.q4) > 0.1);
    }
}

TEST_CASE("metric context validation") {
    MetricContext bad;
    bad.ambient_signs = {-1, -1, -1, +1};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.ambient_signs = {-1, -1, +1, +1};
    bad.spatial_signs = {-1, +1, +1};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.spatial_signs = {-1, -1, +1};
    bad.orientation = 2;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.orientation = 1;
    bad.null_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK_THROWS_AS((void)metric_by_name("euclidean"), ConfigError);
    CHECK(metric_by_name("paper24").ambient_signs[0] == +1);
}
