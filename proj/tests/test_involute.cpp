#include "doctest.h"

#include <cmath>
#include <random>

#include "semiquat/builtins.hpp"
#include "semiquat/frenet.hpp"
#include "semiquat/involute.hpp"
#include "test_support.hpp"

using namespace semiquat;
using namespace testsup;

namespace {
const MetricContext kCtx;
const double kRoot2 = std::sqrt(2.0);
}

TEST_CASE("involute points sit at distance |c - s| along the tangent") {
    const InvolutePair pair = make_involute(example_curve(), kCtx, 2.0);
    for (double s : {-1.2, -0.4, 0.0, 0.5, 1.1}) {
        const SemiQuaternion expect =
            curve_position(pair.evolute, s) + (2.0 - s) * example_T(s);
        CHECK(linf(curve_position(pair.involute, s) - expect) <= 1e-12);
        CHECK(involute_distance(pair, kCtx, s)
              == doctest::Approx(std::abs(2.0 - s)).epsilon(1e-10));
    }
    CHECK(involute_distance(pair, kCtx, 0.5) == doctest::Approx(1.5).epsilon(1e-10));

    SUBCASE("distance vanishes where the tangent line is touched") {
        const InvolutePair inside = make_involute(example_curve(), kCtx, 0.5);
        CHECK(involute_distance(inside, kCtx, 0.5) <= 1e-12);
    }

    SUBCASE("random offsets and parameters obey the same law") {
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> cs(-3.0, 3.0), ss(-1.4, 1.4);
        for (int i = 0; i < 50; ++i) {
            const double c = cs(rng), s = ss(rng);
            const InvolutePair p = make_involute(example_curve(), kCtx, c);
            CHECK(std::abs(involute_distance(p, kCtx, s) - std::abs(c - s)) <= 1e-6);
        }
    }
}

TEST_CASE("cusp bookkeeping") {
    SUBCASE("the parameter value c is singular when inside the domain") {
        const InvolutePair pair = make_involute(example_curve(), kCtx, 0.5);
        REQUIRE(pair.singular_set.size() == 1);
        CHECK(pair.singular_set.front() == doctest::Approx(0.5));
        CHECK(!is_regular(pair, kCtx, 0.5));
        CHECK(!is_regular(pair, kCtx, 0.52));  // inside the guard band
        CHECK(is_regular(pair, kCtx, 0.9));
        CHECK_THROWS_AS(require_regular(pair, kCtx, 0.51), SingularInvolutePoint);
        require_regular(pair, kCtx, -1.0);  // should not throw
    }
    SUBCASE("no cusps when c lies outside the domain") {
        const InvolutePair pair = make_involute(example_curve(), kCtx, 2.0);
        CHECK(pair.singular_set.empty());
        CHECK(is_regular(pair, kCtx, 0.0));
    }
}

TEST_CASE("tangency pairing holds for constructed pairs and fails for controls") {
    const CurveSpec ex = example_curve();
    const InvolutePair pair = make_involute(ex, kCtx, 2.0);
    const PairCheck ok = is_involute_pair(pair.involute, pair.evolute, kCtx, 41, 1e-8);
    CHECK(ok.is_pair);
    CHECK(ok.max_abs_h <= 1e-8);
    CHECK(ok.regular_samples == 41);

    SUBCASE("a curve is not its own involute") {
        const PairCheck self = is_involute_pair(ex, ex, kCtx, 41, 1e-8);
        CHECK(!self.is_pair);
        CHECK(self.max_abs_h == doctest::Approx(1.0));
    }
    SUBCASE("a translate is not an involute") {
        CurveSpec moved = pair.involute;
        auto pos = ex.position;
        moved.position = [pos](double s) { return pos(s) + SemiQuaternion{0.3, 0, -0.2, 1}; };
        AnalyticMode mode;
        mode.max_order = 4;
        mode.deriv = [ex](double s, int n) { return curve_derivative(ex, s, n); };
        moved.mode = mode;
        CHECK(!is_involute_pair(moved, ex, kCtx, 41, 1e-8).is_pair);
    }
    SUBCASE("bad sample settings are rejected") {
        CHECK_THROWS_AS((void)is_involute_pair(pair.involute, ex, kCtx, 1, 1e-8), ConfigError);
        CHECK_THROWS_AS((void)is_involute_pair(pair.involute, ex, kCtx, 41, 0.0), ConfigError);
    }
}

TEST_CASE("involute derivatives decompose in the evolute's frame") {
    // phi' = (c-s) xi'' and phi'' = -xi'' + (c-s) xi''', expressed through
    // the frame: phi'' = -mN + (c-s)(m'N - eps_t m^2 T + eps_n m k B)
    const SignPattern pat{-1, +1, +1, -1};
    const SynthesizedCurve syn(pat, wavy_program(4));
    const CurveSpec c = syn.spec("synth");
    const double cc = 2.1;
    const InvolutePair pair = make_involute(c, kCtx, cc);
    for (double s : {-0.8, -0.1, 0.6}) {
        const auto f = syn.frame(s);
        const double m = syn.program().m.at(s, 0), m1 = syn.program().m.at(s, 1);
        const double k = syn.program().k.at(s, 0);
        const SemiQuaternion expect =
            -m * f.v[1]
            + (cc - s)
                  * (m1 * f.v[1] - double(pat.et()) * m * m * f.v[0]
                     + double(pat.en) * m * k * f.v[2]);
        CHECK(linf(curve_derivative(pair.involute, s, 2) - expect) <= 1e-9);

        // speed law: the involute's speed is |(c-s) kappa|
        const auto app = frenet_apparatus(c, s, kCtx);
        const double speed = norm_N(curve_derivative(pair.involute, s, 1), kCtx);
        CHECK(speed == doctest::Approx(std::abs((cc - s) * app.kappa)).epsilon(1e-9));
    }
}

TEST_CASE("transferred frame and curvatures match the involute's own apparatus") {
    // the transfer returns curvature numerators: the involute's values
    // scaled by J = (c-s) kappa
    struct Probe { unsigned seed; int family; };
    const Probe probes[] = {{1, 0}, {2, 0}, {3, 1}, {5, 1}};
    int tested = 0;
    for (const Probe& p : probes) {
        const CurveSpec c =
            p.family == 0 ? fuzz_block_curve(p.seed) : fuzz_slice_curve(p.seed, kCtx);
        const FuzzWindow w = find_window(c, kCtx);
        if (!w.ok) continue;
        const double cc = w.hi + 0.5;
        const InvolutePair pair = make_involute(c, kCtx, cc);
        for (int i = 1; i <= 3; ++i) {
            const double s = w.lo + (w.hi - w.lo) * i / 4.0;
            if (!is_regular(pair, kCtx, s)) continue;
            const auto app = frenet_apparatus(c, s, kCtx);
            const auto d = numeric_curvature_derivs(c, s, kCtx, 0.01);
            const auto tr = transfer_curvatures(app, d, kCtx);
            const auto direct = frenet_apparatus_general(pair.involute, s, kCtx);

            CHECK(modsign_gap(tr.T, direct.T) <= 1e-4);
            CHECK(modsign_gap(tr.N, direct.N) <= 1e-4);
            CHECK(modsign_gap(tr.B, direct.B) <= 1e-4);
            CHECK(modsign_gap(tr.E, direct.E) <= 1e-4);
            CHECK(std::abs(norm_N(tr.N, kCtx) - 1.0) <= 1e-10);

            const double J = (cc - s) * app.kappa;
            // each frame vector is fixed only up to sign, so the signs of the
            // transferred curvatures depend on orientation; magnitudes do not
            CHECK(std::abs(tr.kappa) == doctest::Approx(std::abs(J * direct.kappa)).epsilon(1e-3));
            CHECK(std::abs(tr.k_star) == doctest::Approx(std::abs(J * direct.k)).epsilon(1e-3));
            REQUIRE(tr.third_star.has_value());
            CHECK(std::abs(*tr.third_star)
                  == doctest::Approx(std::abs(J * direct.third)).epsilon(1e-3));
            ++tested;
        }
    }
    CHECK(tested >= 6);
}

TEST_CASE("transfer without curvature derivatives leaves the third curvature unset") {
    const CurveSpec c = fuzz_block_curve(1);
    const FuzzWindow w = find_window(c, kCtx);
    REQUIRE(w.ok);
    const double s = 0.5 * (w.lo + w.hi);
    const auto app = frenet_apparatus(c, s, kCtx);
    const auto d = numeric_curvature_derivs(c, s, kCtx, 0.01);
    const auto tr = transfer_frame(app, d, kCtx);
    CHECK(!tr.third_star.has_value());
    CHECK(std::abs(norm_N(tr.T, kCtx) - 1.0) <= 1e-10);
}

TEST_CASE("constant-curvature evolutes use the specialized transfer") {
    const auto app = frenet_apparatus(example_curve(), 0.3, kCtx);
    const auto d = numeric_curvature_derivs(example_curve(), 0.3, kCtx, 0.01);

    SUBCASE("the general transfer reports the degeneracy") {
        CHECK_THROWS_AS((void)transfer_curvatures(app, d, kCtx), DegenerateTransfer);
    }

    SUBCASE("numeric curvature derivatives vanish") {
        CHECK(std::abs(d.kappa1) <= 1e-8);
        CHECK(std::abs(d.k1) <= 1e-8);
        CHECK(std::abs(d.third1) <= 1e-8);
        CHECK(std::abs(d.kappa2) <= 1e-6);
        CHECK(std::abs(d.k2) <= 1e-6);
    }

    SUBCASE("the specialized transfer produces the known frame") {
        const auto tr = w_curve_transfer(app, kCtx, d.kappa1, d.k1);
        const double s = 0.3;
        CHECK(modsign_gap(tr.T, SemiQuaternion{std::cosh(s), 0, std::sinh(s), 0}) <= 1e-10);
        CHECK(modsign_gap(tr.N, SemiQuaternion{std::sinh(s), 0, std::cosh(s), 0}) <= 1e-10);
        CHECK(modsign_gap(tr.B, SemiQuaternion{0, 0, 0, 1}) <= 1e-10);
        CHECK(modsign_gap(tr.E, SemiQuaternion{0, 1, 0, 0}) <= 1e-10);
        CHECK(tr.kappa == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(tr.k_star == doctest::Approx(0.0).epsilon(1e-10));
        REQUIRE(tr.third_star.has_value());
        CHECK(*tr.third_star == doctest::Approx(0.0).epsilon(1e-10));

        const SemiQuaternion f[4] = {tr.T, tr.N, tr.B, tr.E};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const double h = inner_h(f[a], f[b], kCtx);
                CHECK(std::abs(h - (a == b ? std::copysign(1.0, h) : 0.0)) <= 1e-10);
            }
    }

    SUBCASE("varying curvatures are refused") {
        const CurveSpec c = fuzz_block_curve(1);
        const FuzzWindow w = find_window(c, kCtx);
        REQUIRE(w.ok);
        const double s = 0.5 * (w.lo + w.hi);
        const auto vapp = frenet_apparatus(c, s, kCtx);
        const auto vd = numeric_curvature_derivs(c, s, kCtx, 0.01);
        CHECK_THROWS_AS((void)w_curve_transfer(vapp, kCtx, vd.kappa1, vd.k1), NotWCurve);
    }
}
