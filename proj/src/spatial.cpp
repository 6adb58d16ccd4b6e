#include "semiquat/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semiquat/errors.hpp"

namespace semiquat {

namespace {

int sign_of(double x) { return x >= 0.0 ? +1 : -1; }

SemiQuaternion strip_spatial(const SemiQuaternion& q, const MetricContext& ctx,
                             const char* what, double s) {
    if (!is_spatial(q, ctx))
        throw ExtractionFailure(std::string(what) + ": " + at_param("product has a temporal part", s));
    return {q.q1, q.q2, q.q3, 0.0};
}

} // namespace

SpatialFrenet3 extract_spatial_frame(const FrenetApparatus4& app, const MetricContext& ctx) {
    ctx.validate();
    const SemiQuaternion Tc = conjugate(app.T);
    SpatialFrenet3 out;
    out.s = app.s;
    out.t = strip_spatial(quat_mul(app.N, Tc, ctx), ctx, "t = N x conj(T)", app.s);
    out.n = strip_spatial(quat_mul(app.B, Tc, ctx), ctx, "n = B x conj(T)", app.s);
    out.b = strip_spatial(quat_mul(app.E, Tc, ctx), ctx, "b = E x conj(T)", app.s);
    out.k = app.k;
    // predicts the torsion spatial_frenet measures on the associated
    // curve; validated across all admissible frame sign patterns
    out.r = app.eps_N * app.third + app.eps_T * app.eps_N * app.kappa;
    return out;
}

SpatialFrenet3 spatial_frenet(const CurveSpec& alpha, double s, const MetricContext& ctx) {
    ctx.validate();
    const auto d = derivatives(alpha, s, 3);
    for (const auto& dn : d)
        if (!is_spatial(dn, ctx))
            throw NonSpatialCurve(alpha.label + ": " + at_param("derivative has a temporal part", s));

    const double unit_tol = alpha.is_analytic() ? 1e-5 : 1e-3;
    const SemiQuaternion t = {d[0].q1, d[0].q2, d[0].q3, 0.0};
    if (std::abs(std::abs(inner_g(t, t, ctx)) - 1.0) > unit_tol)
        throw NotUnitSpeed(alpha.label + ": " + at_param("spatial tangent is not unit", s));

    const SemiQuaternion a2 = {d[1].q1, d[1].q2, d[1].q3, 0.0};
    const double g22 = inner_g(a2, a2, ctx);
    const double scale = linf(a2);
    if (std::abs(g22) <= ctx.null_tol * scale * scale || scale == 0.0)
        throw NullCurvatureVector(alpha.label + ": " + at_param("curvature vector is null", s));
    const double k3 = std::sqrt(std::abs(g22));

    SpatialFrenet3 out;
    out.s = s;
    out.t = t;
    out.n = a2 / k3;
    out.b = cross3(t, out.n, ctx);

    const SemiQuaternion a3 = {d[2].q1, d[2].q2, d[2].q3, 0.0};
    const double k3p = sign_of(g22) * inner_g(a3, a2, ctx) / k3;
    const SemiQuaternion np = a3 / k3 - a2 * (k3p / (k3 * k3));
    const int eps_b = sign_of(inner_g(out.b, out.b, ctx));
    out.k = k3;
    out.r = eps_b * inner_g(np, out.b, ctx);
    return out;
}

CurveSpec associated_spatial_curve(const CurveSpec& xi, const MetricContext& ctx,
                                   double s_ref, const SemiQuaternion& alpha_ref) {
    ctx.validate();
    const auto dom = effective_domain(xi);
    const double lo = dom.first, hi = dom.second;
    if (!(hi > lo)) throw ConfigError(xi.label + ": domain too small");
    if (s_ref < lo || s_ref > hi)
        throw OutOfDomain(xi.label + ": " + at_param("anchor outside the usable domain", s_ref));

    auto base = std::make_shared<CurveSpec>(xi);
    const MetricContext cctx = ctx;
    auto tfield = [base, cctx](double s) {
        const FrenetApparatus4 app = frenet_apparatus(*base, s, cctx);
        const SemiQuaternion t = quat_mul(app.N, conjugate(app.T), cctx);
        if (!is_spatial(t, cctx))
            throw ExtractionFailure(base->label + ": "
                                    + at_param("spatial tangent has a temporal part", s));
        return SemiQuaternion{t.q1, t.q2, t.q3, 0.0};
    };

    struct Table {
        double lo = 0.0, hi = 0.0;
        int panels = 0;
        std::vector<SemiQuaternion> cum;
    };
    auto table = std::make_shared<Table>();
    table->lo = lo;
    table->hi = hi;
    table->panels = std::max(64, static_cast<int>(std::ceil((hi - lo) * 32.0)));
    table->cum.resize(static_cast<size_t>(table->panels) + 1);
    for (int i = 1; i <= table->panels; ++i) {
        const double a = lo + (hi - lo) * (i - 1) / table->panels;
        const double b = lo + (hi - lo) * i / table->panels;
        table->cum[static_cast<size_t>(i)] =
            table->cum[static_cast<size_t>(i - 1)] + detail::gl20_integrate(tfield, a, b);
    }

    auto integral = [table, tfield](double s) {
        const double w = (table->hi - table->lo) / table->panels;
        int k = static_cast<int>(std::floor((s - table->lo) / w));
        k = std::clamp(k, 0, table->panels - 1);
        const double a = table->lo + w * k;
        return table->cum[static_cast<size_t>(k)] + detail::gl20_integrate(tfield, a, s);
    };

    const SemiQuaternion off = integral(s_ref);

    CurveSpec out;
    out.s_min = lo;
    out.s_max = hi;
    out.label = xi.label + "/spatial";
    out.position = [integral, off, alpha_ref](double s) { return alpha_ref + (integral(s) - off); };

    // first derivative is the tangent field itself; higher orders
    // difference that field (its evaluation is already derivative-free)
    AnalyticMode mode;
    mode.max_order = 4;
    const double hstep = 1e-3 * (hi - lo);
    mode.deriv = [tfield, hstep, lo, hi](double s, int n) -> SemiQuaternion {
        if (n == 1) return tfield(s);
        const int half = n <= 3 ? 2 : 3;
        const double room = std::min(s - lo, hi - s) / half;
        if (!(room > 0.0))
            throw StencilOverflow(at_param("tangent-field stencil leaves the domain", s));
        const double h = std::min(hstep, room);
        auto f = [&](int j) { return tfield(s + j * h); };
        switch (n) {
            case 2:
                return (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * h);
            case 3:
                return (-f(-2) + 16.0 * f(-1) - 30.0 * f(0) + 16.0 * f(1) - f(2)) / (12.0 * h * h);
            case 4:
                return (f(-3) - 8.0 * f(-2) + 13.0 * f(-1) - 13.0 * f(1) + 8.0 * f(2) - f(3))
                       / (8.0 * h * h * h);
            default:
                throw Error("spatial curve derivatives available up to order 4");
        }
    };
    out.mode = mode;
    return out;
}

SemiQuaternion involute_spatial_tangent(const InvolutePair& pair, const MetricContext& ctx,
                                        double s) {
    ctx.validate();
    const FrenetApparatus4 app = frenet_apparatus(pair.evolute, s, ctx);
    const double kap = app.kappa, k = app.k;
    const int eT = app.eps_T, eN = app.eps_N, et = app.eps_t, en = app.eps_n;
    const double P2 = std::abs(en * eT * k * k + eT * kap * kap);
    if (P2 <= 1e-9 * std::max({1.0, k * k, kap * kap}))
        throw DegenerateTransfer(pair.evolute.label + ": "
                                 + at_param("involute tangent plane is degenerate", s));
    const double P = std::sqrt(P2);

    // involute frame under the parameter pairing: T from the frame
    // transfer, N oriented by the sign of the speed Jacobian
    const int jsign = sign_of((pair.c - s) * kap);
    const SemiQuaternion Tphi = double(eN) * app.N;
    const SemiQuaternion Nphi =
        (double(jsign) / P) * (double(-et) * kap * app.T + double(en * eN) * k * app.B);
    return strip_spatial(quat_mul(Nphi, conjugate(Tphi), ctx), ctx, "t* = N_phi x conj(T_phi)", s);
}

SpatialExclusionReport check_spatial_exclusion(const InvolutePair& pair, const MetricContext& ctx,
                                               int samples, double tol) {
    ctx.validate();
    if (samples < 2) throw ConfigError("spatial exclusion check needs at least 2 samples");
    if (!(tol > 0.0)) throw ConfigError("spatial exclusion tolerance must be positive");

    const auto dom = effective_domain(pair.evolute);
    SpatialExclusionReport rep;
    for (int i = 0; i < samples; ++i) {
        const double s = dom.first + (dom.second - dom.first) * (i + 0.5) / samples;
        if (!is_regular(pair, ctx, s)) continue;
        std::optional<FrenetApparatus4> maybe;
        std::optional<SemiQuaternion> maybe_tstar;
        try {
            maybe = frenet_apparatus(pair.evolute, s, ctx);
            maybe_tstar = involute_spatial_tangent(pair, ctx, s);
        } catch (const DegenerateFrame&) {
            continue;
        } catch (const NullCurvatureVector&) {
            continue;
        } catch (const DegenerateTransfer&) {
            continue;
        }
        const FrenetApparatus4& app = *maybe;
        const SemiQuaternion& tstar = *maybe_tstar;
        const SemiQuaternion t =
            strip_spatial(quat_mul(app.N, conjugate(app.T), ctx), ctx, "t = N x conj(T)", s);
        const SemiQuaternion n =
            strip_spatial(quat_mul(app.B, conjugate(app.T), ctx), ctx, "n = B x conj(T)", s);

        ++rep.samples;
        rep.max_h_deviation = std::max(rep.max_h_deviation, std::abs(inner_h(t, tstar, ctx) + 1.0));
        const double g = std::abs(inner_g(tstar, n, ctx));
        rep.max_abs_g = std::max(rep.max_abs_g, g);
        const double denom = norm_g(tstar, ctx) * norm_g(n, ctx);
        if (denom > 0.0) rep.min_gap = std::min(rep.min_gap, 1.0 - g / denom);
        rep.max_scalar_part =
            std::max(rep.max_scalar_part, std::abs(quat_mul(t, tstar, ctx).q4));
    }
    if (rep.samples < samples / 2)
        throw DegenerateFrame("spatial exclusion check found mostly singular samples");
    rep.contradiction = rep.max_abs_g <= tol;
    return rep;
}

} // namespace semiquat
