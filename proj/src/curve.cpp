#include "semiquat/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "semiquat/errors.hpp"

namespace semiquat {
namespace {

void require_in_domain(const CurveSpec& curve, double s) {
    // Tiny slack absorbs roundoff from grid generation.
    double slack = 1e-12 * std::max(1.0, std::abs(curve.s_min) + std::abs(curve.s_max));
    if (s < curve.s_min - slack || s > curve.s_max + slack)
        throw OutOfDomain(curve.label + ": " + at_param("parameter outside domain", s));
}

SemiQuaternion eval(const CurveSpec& curve, double s) { return curve.position(s); }

// Order-4-accurate central stencils.  The fourth derivative uses a
// wider step than configured: its 9-point stencil loses ~1e-2 to
// roundoff at h = 1e-3, far beyond the accuracy the widened step
// recovers (truncation is O(h^6), so widening is nearly free).
SemiQuaternion fd_derivative(const CurveSpec& curve, double s, int order, double h) {
    auto f = [&](int k) { return eval(curve, s + k * h); };
    switch (order) {
        case 1:
            return (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * h);
        case 2:
            return (-f(-2) + 16.0 * f(-1) - 30.0 * f(0) + 16.0 * f(1) - f(2)) / (12.0 * h * h);
        case 3:
            return (f(-3) - 8.0 * f(-2) + 13.0 * f(-1) - 13.0 * f(1) + 8.0 * f(2) - f(3)) / (8.0 * h * h * h);
        case 4:
            return (7.0 * f(-4) - 96.0 * f(-3) + 676.0 * f(-2) - 1952.0 * f(-1) + 2730.0 * f(0)
                    - 1952.0 * f(1) + 676.0 * f(2) - 96.0 * f(3) + 7.0 * f(4))
                   / (240.0 * h * h * h * h);
        default:
            throw Error("finite-difference order must be 1..4");
    }
}

int stencil_halfwidth(int order) { return order <= 2 ? 2 : order == 3 ? 3 : 4; }

} // namespace

std::pair<double, double> effective_domain(const CurveSpec& curve) {
    if (curve.is_analytic()) return {curve.s_min, curve.s_max};
    double margin = 4.0 * curve.fd_step();
    return {curve.s_min + margin, curve.s_max - margin};
}

SemiQuaternion curve_position(const CurveSpec& curve, double s) {
    require_in_domain(curve, s);
    return eval(curve, s);
}

SemiQuaternion curve_derivative(const CurveSpec& curve, double s, int order) {
    require_in_domain(curve, s);
    if (order == 0) return eval(curve, s);
    if (order < 0) throw Error("negative derivative order");

    if (curve.is_analytic()) {
        const auto& mode = std::get<AnalyticMode>(curve.mode);
        if (order > mode.max_order)
            throw Error(curve.label + ": analytic derivatives available only up to order "
                        + std::to_string(mode.max_order));
        return mode.deriv(s, order);
    }

    if (order > 4) throw Error("finite-difference derivatives available only up to order 4");

    double h = curve.fd_step();
    double half = stencil_halfwidth(order) * h;
    if (s - half < curve.s_min || s + half > curve.s_max)
        throw StencilOverflow(curve.label + ": " + at_param("stencil footprint leaves the domain", s));

    if (order == 4) {
        // Widen as far as the domain allows, but never report a
        // narrower footprint than the configured step guarantees.
        double target = std::max(h, 0.01 * curve.domain_length());
        double room = std::min(s - curve.s_min, curve.s_max - s) / 4.0;
        h = std::max(h, std::min(target, room));
    }
    return fd_derivative(curve, s, order, h);
}

std::vector<SemiQuaternion> derivatives(const CurveSpec& curve, double s, int max_order) {
    if (max_order < 1 || max_order > curve.max_order())
        throw Error(curve.label + ": derivative order must be 1.." + std::to_string(curve.max_order()));
    std::vector<SemiQuaternion> out;
    out.reserve(static_cast<size_t>(max_order));
    for (int n = 1; n <= max_order; ++n) out.push_back(curve_derivative(curve, s, n));
    return out;
}

UnitSpeedReport check_unit_speed(const CurveSpec& curve, const MetricContext& ctx, int samples, double tol) {
    if (samples < 2) throw ConfigError("check_unit_speed requires at least 2 samples");
    auto [a, b] = effective_domain(curve);
    UnitSpeedReport report;
    report.samples = samples;
    report.tol = tol;
    for (int i = 0; i < samples; ++i) {
        double s = a + (b - a) * i / (samples - 1);
        double dev = std::abs(norm_N(curve_derivative(curve, s, 1), ctx) - 1.0);
        if (dev >= report.max_abs_deviation) {
            report.max_abs_deviation = dev;
            report.worst_s = s;
        }
    }
    report.pass = report.max_abs_deviation <= tol;
    return report;
}

namespace {

// 20-point Gauss-Legendre nodes/weights on [-1, 1] (positive half;
// mirror for the negative nodes).
constexpr std::array<double, 10> kGlNode = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154195, 0.5108670019508271,
    0.6360536807265150, 0.7463319064601508, 0.8391169718222188, 0.9122344282513259,
    0.9639719272779138, 0.9931285991850949};
constexpr std::array<double, 10> kGlWeight = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820, 0.1316886384491766,
    0.1181945319615184, 0.1019301198172404, 0.0832767415767048, 0.0626720483341091,
    0.0406014298003869, 0.0176140071391521};

template <class F>
double gl20(F&& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 10; ++i)
        acc += kGlWeight[i] * (f(mid - half * kGlNode[i]) + f(mid + half * kGlNode[i]));
    return acc * half;
}

struct ArcLengthTable {
    std::vector<double> knots;   // panel boundaries in the source parameter
    std::vector<double> cum;     // arc length accumulated at each knot
    double total = 0.0;
};

} // namespace

CurveSpec reparameterize_by_arclength(const CurveSpec& curve, const MetricContext& ctx, double quadrature_tol) {
    if (quadrature_tol <= 0) throw ConfigError("quadrature tolerance must be positive");

    auto [a, b] = effective_domain(curve);
    if (!(b > a)) throw ConfigError(curve.label + ": domain too small to reparameterize");

    // The callable outlives this function, so everything it touches is
    // owned by shared state captured by value.
    auto base = std::make_shared<CurveSpec>(curve);
    auto speed = [base, ctx](double u) {
        SemiQuaternion d1 = curve_derivative(*base, u, 1);
        if (classify(d1, ctx) == Causality::Null)
            throw NullSpeedPoint(base->label + ": " + at_param("null tangent", u));
        return norm_N(d1, ctx);
    };

    // Guard against near-null speeds on a denser grid than the
    // quadrature nodes (the nodes never sit on panel ends).
    {
        const int probes = 512;
        for (int i = 0; i <= probes; ++i) {
            double u = a + (b - a) * i / probes;
            if (speed(u) < 1e-6)
                throw NullSpeedPoint(base->label + ": " + at_param("speed below tolerance", u));
        }
    }

    auto table = std::make_shared<ArcLengthTable>();
    const int panels = std::max(64, static_cast<int>(std::ceil((b - a) * 32.0)));
    table->knots.resize(static_cast<size_t>(panels) + 1);
    table->cum.resize(static_cast<size_t>(panels) + 1);
    table->cum[0] = 0.0;
    for (int i = 0; i <= panels; ++i) table->knots[static_cast<size_t>(i)] = a + (b - a) * i / panels;
    for (int i = 1; i <= panels; ++i)
        table->cum[static_cast<size_t>(i)] = table->cum[static_cast<size_t>(i - 1)]
            + gl20(speed, table->knots[static_cast<size_t>(i - 1)], table->knots[static_cast<size_t>(i)]);
    table->total = table->cum.back();

    auto arclen = [table, speed](double u) {
        auto it = std::upper_bound(table->knots.begin(), table->knots.end(), u);
        size_t k = static_cast<size_t>(std::max<std::ptrdiff_t>(0, it - table->knots.begin() - 1));
        k = std::min(k, table->knots.size() - 2);
        return table->cum[k] + gl20(speed, table->knots[k], u);
    };

    // Monotone inversion: bracketed Newton on sigma(u) = target.
    auto invert = [table, arclen, speed](double target) {
        target = std::clamp(target, 0.0, table->total);
        auto it = std::upper_bound(table->cum.begin(), table->cum.end(), target);
        size_t k = static_cast<size_t>(std::max<std::ptrdiff_t>(0, it - table->cum.begin() - 1));
        k = std::min(k, table->cum.size() - 2);
        double lo = table->knots[k], hi = table->knots[k + 1];
        double frac = (table->cum[k + 1] > table->cum[k])
                          ? (target - table->cum[k]) / (table->cum[k + 1] - table->cum[k])
                          : 0.5;
        double u = lo + (hi - lo) * std::clamp(frac, 0.0, 1.0);
        double tol = 1e-13 * std::max(1.0, table->total);
        for (int iter = 0; iter < 60; ++iter) {
            double err = arclen(u) - target;
            if (std::abs(err) <= tol) break;
            if (err > 0) hi = u; else lo = u;
            double v = speed(u);
            double step = err / v;
            double next = u - step;
            u = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
        }
        return u;
    };

    auto position = base->position;
    CurveSpec out;
    out.s_min = 0.0;
    out.s_max = table->total;
    out.label = curve.label + "/arclength";
    out.position = [position, invert](double sigma) { return position(invert(sigma)); };
    out.mode = FiniteDifferenceMode{1e-3 * table->total};
    return out;
}

double arc_length(const CurveSpec& curve, const MetricContext& ctx, double from, double to) {
    if (from > to) return -arc_length(curve, ctx, to, from);
    auto speed = [&](double u) { return norm_N(curve_derivative(curve, u, 1), ctx); };
    const int panels = std::max(8, static_cast<int>(std::ceil((to - from) * 32.0)));
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = from + (to - from) * i / panels;
        const double b = from + (to - from) * (i + 1) / panels;
        acc += gl20(speed, a, b);
    }
    return acc;
}

namespace detail {

double gl20_integrate(const std::function<double(double)>& f, double a, double b) {
    return gl20(f, a, b);
}

SemiQuaternion gl20_integrate(const std::function<SemiQuaternion(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    SemiQuaternion acc{0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 10; ++i)
        acc += kGlWeight[i] * (f(mid - half * kGlNode[i]) + f(mid + half * kGlNode[i]));
    return half * acc;
}

std::function<SemiQuaternion(double)> cumulative_integral(std::function<SemiQuaternion(double)> f,
                                                          double lo, double hi) {
    if (!(hi > lo)) throw ConfigError("cumulative integral needs a nonempty interval");
    struct Table {
        double lo = 0.0, hi = 0.0;
        int panels = 0;
        std::vector<SemiQuaternion> cum;
        std::function<SemiQuaternion(double)> f;
    };
    auto table = std::make_shared<Table>();
    table->lo = lo;
    table->hi = hi;
    table->panels = std::max(64, static_cast<int>(std::ceil((hi - lo) * 32.0)));
    table->f = std::move(f);
    table->cum.resize(static_cast<size_t>(table->panels) + 1);
    for (int i = 1; i <= table->panels; ++i) {
        const double a = lo + (hi - lo) * (i - 1) / table->panels;
        const double b = lo + (hi - lo) * i / table->panels;
        table->cum[static_cast<size_t>(i)] =
            table->cum[static_cast<size_t>(i - 1)] + gl20_integrate(table->f, a, b);
    }
    return [table](double s) {
        const double w = (table->hi - table->lo) / table->panels;
        int k = static_cast<int>(std::floor((s - table->lo) / w));
        k = std::clamp(k, 0, table->panels - 1);
        const double a = table->lo + w * k;
        return table->cum[static_cast<size_t>(k)] + gl20_integrate(table->f, a, s);
    };
}

} // namespace detail

} // namespace semiquat
