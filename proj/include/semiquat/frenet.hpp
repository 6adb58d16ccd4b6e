#pragma once

#include <array>

#include "semiquat/curve.hpp"
#include "semiquat/metric.hpp"
#include "semiquat/quaternion.hpp"

namespace semiquat {

/// Moving frame and curvature data at one parameter value.  `third`
/// is the combination the fourth Frenet equation uses (the spatial
/// torsion r enters only through it).
struct FrenetApparatus4 {
    double s = 0.0;
    SemiQuaternion T, N, B, E;
    double kappa = 0.0;  // signed: eps_N * N(xi'')
    double k = 0.0;      // nonnegative by convention
    double third = 0.0;
    int eps_T = +1, eps_N = +1, eps_t = +1, eps_n = +1, eps_b = +1;
};

/// Full apparatus with deterministic signs:
///  - N and kappa from xi'';
///  - E direction from the triple wedge of (T, N, xi''');
///  - B sign pinned by the normal Frenet equation (N' + eps_t eps_N
///    kappa T must be a positive multiple of eps_n k B);
///  - E sign pinned by det(T, N, B, E) = +1.
/// The result does not depend on ctx.orientation.
FrenetApparatus4 frenet_apparatus(const CurveSpec& curve, double s, const MetricContext& ctx);

/// Apparatus of the unit-speed reparameterization of a regular curve,
/// via exact chain rules at s (no numerical inversion).  The frame is
/// oriented along increasing s; `s` stays the source parameter.
FrenetApparatus4 frenet_apparatus_general(const CurveSpec& curve, double s, const MetricContext& ctx);

/// Norms of the four Frenet equation residuals, differencing the
/// frame numerically with an order-4 central stencil of step h_step.
std::array<double, 4> frenet_ode_residual(const CurveSpec& curve, double s, const MetricContext& ctx,
                                          double h_step);

} // namespace semiquat
