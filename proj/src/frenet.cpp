#include "semiquat/frenet.hpp"

#include <cmath>

#include "semiquat/errors.hpp"

namespace semiquat {
namespace {

int sign_of(double x) { return x >= 0.0 ? +1 : -1; }

double unit_speed_tolerance(const CurveSpec& curve) {
    return curve.is_analytic() ? 1e-5 : 1e-3;
}

FrenetApparatus4 apparatus_from_derivatives(const std::string& label, double s,
                                            const SemiQuaternion& d1, const SemiQuaternion& d2,
                                            const SemiQuaternion& d3, const SemiQuaternion& d4,
                                            const MetricContext& ctx, double unit_tol);

} // namespace

FrenetApparatus4 frenet_apparatus(const CurveSpec& curve, double s, const MetricContext& ctx) {
    ctx.validate();
    auto d = derivatives(curve, s, 4);
    return apparatus_from_derivatives(curve.label, s, d[0], d[1], d[2], d[3], ctx,
                                      unit_speed_tolerance(curve));
}

FrenetApparatus4 frenet_apparatus_general(const CurveSpec& curve, double s, const MetricContext& ctx) {
    ctx.validate();
    auto d = derivatives(curve, s, 4);
    const SemiQuaternion &p1 = d[0], &p2 = d[1], &p3 = d[2], &p4 = d[3];

    if (classify(p1, ctx) == Causality::Null)
        throw NullSpeedPoint(curve.label + ": " + at_param("null tangent", s));
    const double sg = static_cast<double>(causal_sign(p1, ctx).value);
    const double v = norm_N(p1, ctx);
    // derivatives of the speed v = sqrt(|h(phi', phi')|)
    const double v1 = sg * inner_h(p2, p1, ctx) / v;
    const double v2 = (sg * (inner_h(p3, p1, ctx) + inner_h(p2, p2, ctx)) - v1 * v1) / v;
    const double v3 = (sg * (inner_h(p4, p1, ctx) + 3.0 * inner_h(p3, p2, ctx)) - 3.0 * v1 * v2) / v;

    // exact unit-speed derivatives at the same geometric point
    const SemiQuaternion u1 = p1 / v;
    const SemiQuaternion u2 = p2 / (v * v) - p1 * (v1 / (v * v * v));
    const SemiQuaternion u3 = p3 / (v * v * v) - p2 * (3.0 * v1 / (v * v * v * v))
                            + p1 * (3.0 * v1 * v1 / std::pow(v, 5) - v2 / (v * v * v * v));
    const SemiQuaternion u4 = p4 / std::pow(v, 4) - p3 * (6.0 * v1 / std::pow(v, 5))
                            + p2 * (15.0 * v1 * v1 / std::pow(v, 6) - 4.0 * v2 / std::pow(v, 5))
                            + p1 * (10.0 * v1 * v2 / std::pow(v, 6)
                                    - 15.0 * v1 * v1 * v1 / std::pow(v, 7)
                                    - v3 / std::pow(v, 5));

    return apparatus_from_derivatives(curve.label, s, u1, u2, u3, u4, ctx, 1e-6);
}

namespace {

FrenetApparatus4 apparatus_from_derivatives(const std::string& label, double s,
                                            const SemiQuaternion& d1, const SemiQuaternion& d2,
                                            const SemiQuaternion& d3, const SemiQuaternion& d4,
                                            const MetricContext& ctx, double unit_tol) {
    FrenetApparatus4 app;
    app.s = s;

    app.T = d1;
    double speed = norm_N(app.T, ctx);
    if (std::abs(speed - 1.0) > unit_tol)
        throw NotUnitSpeed(label + ": " + at_param("tangent norm " + std::to_string(speed), s));
    app.eps_T = causal_sign(app.T, ctx).value;

    if (classify(d2, ctx) == Causality::Null)
        throw NullCurvatureVector(label + ": " + at_param("xi'' is null", s));
    double m = norm_N(d2, ctx);
    app.N = d2 / m;
    app.eps_N = causal_sign(app.N, ctx).value;
    app.kappa = app.eps_N * m;

    SemiQuaternion W = wedge4(app.T, app.N, d3, ctx);
    if (classify(W, ctx) == Causality::Null || norm_N(W, ctx) <= 1e-6 * std::max(1.0, linf(d3)))
        throw DegenerateFrame(label + ": " + at_param("triple wedge of (T, N, xi''') degenerates", s));
    double w = norm_N(W, ctx);
    SemiQuaternion E_hat = W / w;
    app.k = w / m;

    SemiQuaternion B_raw = wedge4(E_hat, app.T, app.N, ctx);
    double b_norm = norm_N(B_raw, ctx);
    if (b_norm <= 1e-9) throw DegenerateFrame(label + ": " + at_param("binormal wedge vanishes", s));
    SemiQuaternion B_hat = B_raw / b_norm;

    app.eps_n = app.eps_T * causal_sign(B_hat, ctx).value;
    app.eps_b = app.eps_T * causal_sign(E_hat, ctx).value;

    // N' in closed form from the curve derivatives: N = xi''/m with
    // m' = sign(h(xi'',xi'')) h(xi''',xi'')/m.
    double m_prime = sign_of(inner_h(d2, d2, ctx)) * inner_h(d3, d2, ctx) / m;
    SemiQuaternion N_prime = d3 / m - d2 * (m_prime / (m * m));

    // The normal equation reads N' = -eps_t eps_N kappa T + eps_n k B,
    // so eps_t falls out of the tangential component of N' ...
    app.eps_t = sign_of(-app.eps_T * inner_h(N_prime, app.T, ctx));

    // ... and the sign of B falls out of the rest of it.
    SemiQuaternion closure = N_prime + app.eps_t * app.eps_N * app.kappa * app.T;
    int sigma_B = app.eps_T * sign_of(inner_h(closure, B_hat, ctx));
    app.B = sigma_B * B_hat;

    int sigma_E = sign_of(det4(app.T, app.N, app.B, E_hat));
    app.E = sigma_E * E_hat;

    // xi'''' = ... + m k third E in this frame, and h(E, E) = eps_T eps_b
    app.third = app.eps_T * app.eps_b * inner_h(d4, app.E, ctx) / w;
    return app;
}

} // namespace

std::array<double, 4> frenet_ode_residual(const CurveSpec& curve, double s, const MetricContext& ctx,
                                          double h_step) {
    if (h_step <= 0) throw ConfigError("frenet_ode_residual requires a positive step");

    FrenetApparatus4 c = frenet_apparatus(curve, s, ctx);
    FrenetApparatus4 m2 = frenet_apparatus(curve, s - 2 * h_step, ctx);
    FrenetApparatus4 m1 = frenet_apparatus(curve, s - h_step, ctx);
    FrenetApparatus4 p1 = frenet_apparatus(curve, s + h_step, ctx);
    FrenetApparatus4 p2 = frenet_apparatus(curve, s + 2 * h_step, ctx);

    auto diff = [&](SemiQuaternion FrenetApparatus4::*v) {
        return (m2.*v - 8.0 * (m1.*v) + 8.0 * (p1.*v) - p2.*v) / (12.0 * h_step);
    };
    SemiQuaternion Tp = diff(&FrenetApparatus4::T);
    SemiQuaternion Np = diff(&FrenetApparatus4::N);
    SemiQuaternion Bp = diff(&FrenetApparatus4::B);
    SemiQuaternion Ep = diff(&FrenetApparatus4::E);

    return {
        norm_N(Tp - c.eps_N * c.kappa * c.N, ctx),
        norm_N(Np + c.eps_t * c.eps_N * c.kappa * c.T - c.eps_n * c.k * c.B, ctx),
        norm_N(Bp + c.eps_t * c.k * c.N - c.eps_n * c.third * c.E, ctx),
        norm_N(Ep + c.eps_b * c.third * c.B, ctx),
    };
}

} // namespace semiquat
