#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "semiquat/metric.hpp"
#include "semiquat/quaternion.hpp"

namespace semiquat {

/// Derivatives supplied in closed form, up to max_order.
struct AnalyticMode {
    std::function<SemiQuaternion(double s, int order)> deriv;
    int max_order = 4;
};

/// Central differences on the position map; step <= 0 selects the
/// default 1e-3 * (domain length).
struct FiniteDifferenceMode {
    double step = 0.0;
};

using DerivativeMode = std::variant<AnalyticMode, FiniteDifferenceMode>;

struct CurveSpec {
    double s_min = 0.0;
    double s_max = 1.0;
    std::function<SemiQuaternion(double)> position;
    DerivativeMode mode = FiniteDifferenceMode{};
    std::string label = "curve";

    double domain_length() const { return s_max - s_min; }
    bool is_analytic() const { return std::holds_alternative<AnalyticMode>(mode); }
    int max_order() const {
        return is_analytic() ? std::get<AnalyticMode>(mode).max_order : 4;
    }
    /// Resolved finite-difference step (meaningful in FD mode only).
    double fd_step() const {
        double h = is_analytic() ? 0.0 : std::get<FiniteDifferenceMode>(mode).step;
        return h > 0.0 ? h : 1e-3 * domain_length();
    }
};

struct UnitSpeedReport {
    int samples = 0;
    double max_abs_deviation = 0.0;
    double worst_s = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Domain usable for derivative evaluation (FD mode shrinks the ends
/// by the stencil footprint).
std::pair<double, double> effective_domain(const CurveSpec& curve);

SemiQuaternion curve_position(const CurveSpec& curve, double s);

/// order 0 returns the position; orders 1..4 (or the analytic
/// max_order) return d^n/ds^n.
SemiQuaternion curve_derivative(const CurveSpec& curve, double s, int order);

/// Derivatives 1..max_order, in order.
std::vector<SemiQuaternion> derivatives(const CurveSpec& curve, double s, int max_order);

UnitSpeedReport check_unit_speed(const CurveSpec& curve, const MetricContext& ctx, int samples, double tol);

/// New curve whose parameter is arc length measured from s_min
/// (domain [0, total length]), in finite-difference mode.
CurveSpec reparameterize_by_arclength(const CurveSpec& curve, const MetricContext& ctx, double quadrature_tol);

/// Signed arc length between two parameter values.
double arc_length(const CurveSpec& curve, const MetricContext& ctx, double from, double to);

namespace detail {

/// 20-point Gauss-Legendre rule on [a, b].
double gl20_integrate(const std::function<double(double)>& f, double a, double b);
SemiQuaternion gl20_integrate(const std::function<SemiQuaternion(double)>& f, double a, double b);

/// Map s -> integral of f from lo to s, backed by a panel table built
/// once up front (evaluations off the panel grid pay one extra rule).
std::function<SemiQuaternion(double)> cumulative_integral(std::function<SemiQuaternion(double)> f,
                                                          double lo, double hi);

} // namespace detail

} // namespace semiquat
