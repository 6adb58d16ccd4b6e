#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "semiquat/builtins.hpp"
#include "semiquat/curve.hpp"
#include "semiquat/frenet.hpp"
#include "semiquat/involute.hpp"
#include "test_support.hpp"

using namespace semiquat;

namespace {

const MetricContext kCtx;

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

// the example curve evaluated at u(t) = 2t, exact derivatives included
CurveSpec double_speed_example() {
    CurveSpec ex = example_curve();
    CurveSpec out;
    out.s_min = -0.6;
    out.s_max = 0.6;
    out.label = "double-speed";
    auto pos = ex.position;
    out.position = [pos](double t) { return pos(2.0 * t); };
    AnalyticMode mode;
    mode.max_order = 4;
    mode.deriv = [ex](double t, int n) {
        double f = 1.0;
        for (int i = 0; i < n; ++i) f *= 2.0;
        return f * curve_derivative(ex, 2.0 * t, n);
    };
    out.mode = mode;
    return out;
}

}  // namespace

TEST_CASE("example curve derivatives match the closed forms") {
    const CurveSpec ex = example_curve();
    for (double s : {-1.2, -0.3, 0.0, 0.8}) {
        CHECK(linf(curve_position(ex, s) - testsup::example_position(s)) <= 1e-15);
        CHECK(linf(curve_derivative(ex, s, 1) - testsup::example_T(s)) <= 1e-15);
        CHECK(linf(curve_derivative(ex, s, 2) - testsup::example_N(s)) <= 1e-15);
        const SemiQuaternion d3{std::sinh(s), 0, std::cosh(s), 0};
        CHECK(linf(curve_derivative(ex, s, 3) - d3) <= 1e-15);
    }
    const auto rep = check_unit_speed(ex, kCtx, 41, 1e-12);
    CHECK(rep.pass);
    CHECK(rep.max_abs_deviation <= 1e-12);
}

TEST_CASE("finite differences track the analytic derivatives") {
    const CurveSpec ex = example_curve();
    const CurveSpec fd = testsup::make_fd(ex, 1e-2);
    for (double s : {-0.8, 0.0, 0.9}) {
        for (int n = 1; n <= 4; ++n) {
            const double err =
                linf(curve_derivative(fd, s, n) - curve_derivative(ex, s, n));
            CHECK(err <= 1e-6);
        }
    }
}

TEST_CASE("domain handling") {
    const CurveSpec ex = example_curve();
    CHECK_THROWS_AS((void)curve_position(ex, 1.7), OutOfDomain);
    CHECK_THROWS_AS((void)curve_derivative(ex, -2.0, 1), OutOfDomain);

    const CurveSpec fd = testsup::make_fd(ex, 1e-2);
    const auto [lo, hi] = effective_domain(fd);
    CHECK(lo > ex.s_min);
    CHECK(hi < ex.s_max);
    // inside the full domain but outside the stencil-safe band
    CHECK_THROWS_AS((void)curve_derivative(fd, ex.s_max - 1e-4, 4), StencilOverflow);
    const auto [alo, ahi] = effective_domain(ex);
    CHECK(alo == ex.s_min);
    CHECK(ahi == ex.s_max);
}

TEST_CASE("unit speed check flags a rescaled parameter") {
    const auto rep = check_unit_speed(double_speed_example(), kCtx, 21, 1e-9);
    CHECK(!rep.pass);
    CHECK(rep.max_abs_deviation == doctest::Approx(1.0).epsilon(1e-9));  // speed is 2
}

TEST_CASE("arc length and reparameterization") {
    const CurveSpec ex = example_curve();

    SUBCASE("signed arc length of a unit-speed curve is the parameter gap") {
        CHECK(arc_length(ex, kCtx, -0.5, 1.0) == doctest::Approx(1.5).epsilon(1e-10));
        CHECK(arc_length(ex, kCtx, 1.0, -0.5) == doctest::Approx(-1.5).epsilon(1e-10));
    }

    SUBCASE("double-speed curve recovers the original") {
        const CurveSpec rep = reparameterize_by_arclength(double_speed_example(), kCtx, 1e-10);
        CHECK(rep.s_min == doctest::Approx(0.0));
        CHECK(rep.s_max == doctest::Approx(2.4).epsilon(1e-8));
        for (double u : {0.1, 1.0, 2.2}) {
            const SemiQuaternion got = curve_position(rep, u);
            CHECK(linf(got - testsup::example_position(u - 1.2)) <= 1e-6);
        }
    }

    SUBCASE("reparameterizing a unit-speed curve is the identity shift") {
        const CurveSpec rep = reparameterize_by_arclength(ex, kCtx, 1e-10);
        for (double u : {0.3, 1.5, 2.8})
            CHECK(linf(curve_position(rep, u) - testsup::example_position(u - 1.5)) <= 1e-8);
    }

    SUBCASE("involute becomes unit speed after reparameterization") {
        const InvolutePair pair = make_involute(ex, kCtx, 2.0);
        const CurveSpec rep = reparameterize_by_arclength(pair.involute, kCtx, 1e-10);
        const auto urep = check_unit_speed(rep, kCtx, 21, 1e-5);
        CHECK(urep.pass);
    }

    SUBCASE("a stationary point stops arc-length work") {
        CurveSpec flat;
        flat.s_min = -1.0;
        flat.s_max = 1.0;
        flat.label = "stationary";
        // speed vanishes at s = 0
        flat.position = [](double s) {
            return SemiQuaternion{0, 0, s * s * s / 3.0, 0};
        };
        AnalyticMode mode;
        mode.max_order = 4;
        mode.deriv = [](double s, int n) {
            switch (n) {
                case 1: return SemiQuaternion{0, 0, s * s, 0};
                case 2: return SemiQuaternion{0, 0, 2 * s, 0};
                case 3: return SemiQuaternion{0, 0, 2, 0};
                default: return SemiQuaternion{};
            }
        };
        flat.mode = mode;
        CHECK_THROWS_AS((void)reparameterize_by_arclength(flat, kCtx, 1e-10), NullSpeedPoint);
    }
}

TEST_CASE("csv curves") {
    const std::string good = temp_path("sq_test_roundtrip.csv");
    {
        std::ofstream out(good);
        out << "s,q1,q2,q3,q4\n";
        const CurveSpec ex = example_curve();
        char buf[160];
        for (double s = -1.3; s <= 1.3 + 1e-12; s += 5e-4) {
            const SemiQuaternion q = curve_position(ex, s);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s, q.q1, q.q2,
                          q.q3, q.q4);
            out << buf;
        }
    }

    SUBCASE("round trip reproduces the apparatus to interpolation tolerance") {
        const CurveSpec back = csv_curve(good);
        const CurveSpec ex = example_curve();
        for (double s = -1.0; s <= 1.0 + 1e-12; s += 0.2) {
            const auto a = frenet_apparatus(back, s, kCtx);
            const auto b = frenet_apparatus(ex, s, kCtx);
            CHECK(std::abs(a.kappa - b.kappa) <= 1e-5);
            CHECK(std::abs(a.k - b.k) <= 1e-5);
            CHECK(std::abs(a.third - b.third) <= 1e-5);
            CHECK(linf(a.T - b.T) <= 1e-5);
            CHECK(linf(a.N - b.N) <= 1e-5);
            CHECK(linf(a.B - b.B) <= 1e-5);
            CHECK(linf(a.E - b.E) <= 1e-5);
        }
    }

    SUBCASE("header errors") {
        const std::string bad = temp_path("sq_test_badheader.csv");
        std::ofstream(bad) << "s,x,y,z,w\n0,1,0,0,0\n";
        CHECK_THROWS_AS((void)csv_curve(bad), ConfigError);
        std::filesystem::remove(bad);
    }
    SUBCASE("non-monotonic sample errors") {
        const std::string bad = temp_path("sq_test_nonmono.csv");
        {
            std::ofstream out(bad);
            out << "s,q1,q2,q3,q4\n";
            for (double s : {0.0, 0.1, 0.1, 0.3, 0.4, 0.5, 0.6, 0.7})
                out << s << ",1,0,0,0\n";
        }
        CHECK_THROWS_AS((void)csv_curve(bad), ConfigError);
        std::filesystem::remove(bad);
    }
    SUBCASE("too few samples") {
        const std::string bad = temp_path("sq_test_short.csv");
        std::ofstream(bad) << "s,q1,q2,q3,q4\n0,1,0,0,0\n1,2,0,0,0\n";
        CHECK_THROWS_AS((void)csv_curve(bad), ConfigError);
        std::filesystem::remove(bad);
    }
    SUBCASE("malformed row") {
        const std::string bad = temp_path("sq_test_fields.csv");
        std::ofstream(bad) << "s,q1,q2,q3,q4\n0,1,0,0\n";
        CHECK_THROWS_AS((void)csv_curve(bad), ConfigError);
        std::filesystem::remove(bad);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS((void)csv_curve(temp_path("sq_test_missing.csv")), ConfigError);
    }

    std::filesystem::remove(good);
}

TEST_CASE("curve lookup by name") {
    CHECK(curve_by_name("example31", kCtx).label == "example31");
    CHECK(curve_by_name("block2-7", kCtx).label == "block2-7");
    CHECK(curve_by_name("slice3-4", kCtx).label == "slice3-4");
    CHECK_THROWS_AS((void)curve_by_name("spiral", kCtx), ConfigError);
    CHECK_THROWS_AS((void)curve_by_name("block2-x", kCtx), ConfigError);
}

TEST_CASE("fuzz families are unit speed") {
    for (unsigned seed : {1u, 9u, 23u}) {
        const auto rb = check_unit_speed(fuzz_block_curve(seed), kCtx, 31, 1e-10);
        CHECK(rb.pass);
        const auto rs = check_unit_speed(fuzz_slice_curve(seed, kCtx), kCtx, 31, 1e-10);
        CHECK(rs.pass);
    }
}
