#include "semiquat/involute.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "semiquat/errors.hpp"
#include "semiquat/quaternion.hpp"

namespace semiquat {

namespace {

int sign_of(double x) { return x >= 0.0 ? +1 : -1; }

} // namespace

InvolutePair make_involute(const CurveSpec& xi, const MetricContext& ctx, double c) {
    ctx.validate();
    if (!(xi.s_max > xi.s_min)) throw ConfigError("evolute has an empty domain");

    InvolutePair pair;
    pair.evolute = xi;
    pair.c = c;
    pair.guard = 1e-2 * xi.domain_length();

    auto base = std::make_shared<CurveSpec>(xi);

    CurveSpec phi;
    phi.s_min = xi.s_min;
    phi.s_max = xi.s_max;
    phi.label = xi.label + "/involute";
    phi.position = [base, c](double s) {
        return curve_position(*base, s) + (c - s) * curve_derivative(*base, s, 1);
    };
    if (xi.is_analytic() && xi.max_order() >= 2) {
        AnalyticMode mode;
        mode.max_order = xi.max_order() - 1;
        // phi = xi + (c-s) xi'  =>  phi^(n) = (1-n) xi^(n) + (c-s) xi^(n+1)
        mode.deriv = [base, c](double s, int n) {
            return double(1 - n) * curve_derivative(*base, s, n)
                 + (c - s) * curve_derivative(*base, s, n + 1);
        };
        phi.mode = mode;
    } else {
        FiniteDifferenceMode fd;
        fd.step = xi.fd_step();
        phi.mode = fd;
    }
    pair.involute = std::move(phi);

    // cusps: zeros of (c-s) * N(xi'').  The factor (c-s) vanishes at c;
    // additional near-zeros of the curvature magnitude are collected by a scan.
    if (c >= xi.s_min && c <= xi.s_max) pair.singular_set.push_back(c);
    const auto dom = effective_domain(xi);
    const int ns = 401;
    bool in_run = false;
    double run_lo = 0.0, run_hi = 0.0;
    auto flush = [&] {
        if (in_run) pair.singular_set.push_back(0.5 * (run_lo + run_hi));
        in_run = false;
    };
    for (int i = 0; i < ns; ++i) {
        const double s = dom.first + (dom.second - dom.first) * i / (ns - 1);
        if (std::abs(s - c) <= pair.guard) { flush(); continue; }
        double v = 0.0;
        bool ok = true;
        try {
            v = std::abs(c - s) * norm_N(curve_derivative(xi, s, 2), ctx);
        } catch (const Error&) {
            ok = false;
        }
        if (!ok || v < 1e-6) {
            if (!in_run) { in_run = true; run_lo = s; }
            run_hi = s;
        } else {
            flush();
        }
    }
    flush();
    std::sort(pair.singular_set.begin(), pair.singular_set.end());
    return pair;
}

bool is_regular(const InvolutePair& pair, const MetricContext& ctx, double s) {
    if (std::abs(s - pair.c) < pair.guard) return false;
    for (double s0 : pair.singular_set)
        if (std::abs(s - s0) < pair.guard) return false;
    try {
        const double m = norm_N(curve_derivative(pair.evolute, s, 2), ctx);
        return std::abs(pair.c - s) * m >= 1e-6;
    } catch (const Error&) {
        return false;
    }
}

void require_regular(const InvolutePair& pair, const MetricContext& ctx, double s) {
    if (!is_regular(pair, ctx, s))
        throw SingularInvolutePoint(at_param("involute frame is singular", s));
}

double involute_distance(const InvolutePair& pair, const MetricContext& ctx, double s) {
    const SemiQuaternion diff =
        curve_position(pair.involute, s) - curve_position(pair.evolute, s);
    return norm_N(diff, ctx);
}

PairCheck is_involute_pair(const CurveSpec& phi, const CurveSpec& xi, const MetricContext& ctx,
                           int samples, double tol) {
    ctx.validate();
    if (samples < 2) throw ConfigError("tangency check needs at least 2 samples");
    if (!(tol > 0.0)) throw ConfigError("tangency tolerance must be positive");
    const auto dphi = effective_domain(phi);
    const auto dxi = effective_domain(xi);
    const double lo = std::max(dphi.first, dxi.first);
    const double hi = std::min(dphi.second, dxi.second);
    if (!(hi > lo)) throw ConfigError("curves share no parameter range");

    PairCheck out;
    for (int i = 0; i < samples; ++i) {
        const double s = lo + (hi - lo) * (i + 0.5) / samples;
        const SemiQuaternion dp = curve_derivative(phi, s, 1);
        const double np = norm_N(dp, ctx);
        if (!(np > 1e-7 * std::max(1.0, linf(dp)))) continue;  // cusp sample
        const SemiQuaternion tx = curve_derivative(xi, s, 1);
        const double nx = norm_N(tx, ctx);
        if (!(nx > 1e-7 * std::max(1.0, linf(tx)))) continue;
        const double r = std::abs(inner_h(dp, tx, ctx)) / (np * nx);
        ++out.regular_samples;
        if (r >= out.max_abs_h) {
            out.max_abs_h = r;
            out.worst_s = s;
        }
    }
    if (out.regular_samples < samples / 2)
        throw DegenerateFrame("tangency check found mostly singular samples");
    out.is_pair = out.max_abs_h <= tol;
    return out;
}

namespace {

TransferredApparatus transfer_impl(const FrenetApparatus4& app, const CurvatureDerivs& d,
                                   const MetricContext& ctx, bool want_third) {
    ctx.validate();
    const double kap = app.kappa, k = app.k, rt = app.third;
    const int eT = app.eps_T, eN = app.eps_N, et = app.eps_t;
    const int en = app.eps_n, eb = app.eps_b;

    const double scale = std::max({1.0, k * k, kap * kap});
    const double P2 = std::abs(en * eT * k * k + eT * kap * kap);
    if (P2 <= 1e-9 * scale)
        throw DegenerateTransfer(at_param("transferred normal is null", app.s));
    const double P = std::sqrt(P2);

    TransferredApparatus out;
    out.T = double(eN) * app.N;
    out.N = (1.0 / P) * (double(-et) * kap * app.T + double(en * eN) * k * app.B);

    // unnormalized direction of the last frame vector
    const double wT = en * eT * eN * k * k * rt;
    const double wB = et * en * eT * kap * k * rt;
    const double wE = et * en * eb * eT * (d.kappa1 * k - kap * d.k1);
    const SemiQuaternion WE = wT * app.T + wB * app.B + wE * app.E;
    const double Q = norm_N(WE, ctx);
    const double wscale = std::max({1.0, std::abs(wT), std::abs(wB), std::abs(wE)});
    if (Q <= 1e-9 * wscale)
        throw DegenerateTransfer(
            at_param("transfer wedge degenerates (constant-curvature limit)", app.s));
    out.E = (1.0 / Q) * WE;

    const SemiQuaternion Braw = wedge4(out.E, out.T, out.N, ctx);
    const double bn = norm_N(Braw, ctx);
    if (!(bn > 1e-9))
        throw DegenerateTransfer(at_param("transferred frame does not span", app.s));
    out.B = (1.0 / bn) * Braw;

    // orientation fix: flipping E alone flips the determinant
    out.eta_used = +1;
    if (det4(out.T, out.N, out.B, out.E) < 0.0) {
        out.E = -1.0 * out.E;
        out.eta_used = -1;
    }

    const int eTphi = sign_of(inner_h(out.T, out.T, ctx));
    const int eNphi = sign_of(inner_h(out.N, out.N, ctx));
    out.eps_b_star = eTphi * sign_of(inner_h(out.E, out.E, ctx));
    out.kappa = eNphi * P;
    out.k_star = eNphi * Q / P2;

    if (want_third) {
        // fourth derivative of the involute in the evolute's frame, up to
        // the common speed power that cancels against the wedge norm
        const double aT = -et * d.kappa2 + kap * (en * k * k + kap * kap);
        const double aN = -3.0 * et * eN * kap * d.kappa1 - 3.0 * et * en * eN * k * d.k1;
        const double aB = -et * en * eN * k * (en * k * k + kap * kap) + en * eN * d.k2
                        - eb * eN * k * rt * rt;
        const double aE = eN * (2.0 * d.k1 * rt + k * d.third1);
        const SemiQuaternion d4 =
            aT * app.T + aN * app.N + aB * app.B + aE * app.E;
        out.third_star = out.eps_b_star * eTphi * eNphi * inner_h(d4, out.E, ctx) * P / Q;
    }
    return out;
}

} // namespace

TransferredApparatus transfer_frame(const FrenetApparatus4& app, const CurvatureDerivs& d,
                                    const MetricContext& ctx) {
    return transfer_impl(app, d, ctx, false);
}

TransferredApparatus transfer_curvatures(const FrenetApparatus4& app, const CurvatureDerivs& d,
                                         const MetricContext& ctx) {
    return transfer_impl(app, d, ctx, true);
}

TransferredApparatus w_curve_transfer(const FrenetApparatus4& app, const MetricContext& ctx,
                                      double kappa1, double k1, double deriv_tol) {
    ctx.validate();
    if (std::abs(kappa1) > deriv_tol || std::abs(k1) > deriv_tol)
        throw NotWCurve(at_param("curvatures are not constant", app.s));
    const double kap = app.kappa, k = app.k, rt = app.third;
    const int eT = app.eps_T, eN = app.eps_N, et = app.eps_t;
    const int en = app.eps_n, eb = app.eps_b;

    const double scale = std::max({1.0, k * k, kap * kap});
    const double P2 = std::abs(en * eT * k * k + eT * kap * kap);
    const double PE2 = std::abs(eT * k * k + en * eT * kap * kap);
    if (P2 <= 1e-9 * scale || PE2 <= 1e-9 * scale)
        throw DegenerateTransfer(at_param("transferred frame is null", app.s));
    const double P = std::sqrt(P2), PE = std::sqrt(PE2);

    TransferredApparatus out;
    out.T = double(eN) * app.N;
    out.N = (1.0 / P) * (double(-et) * kap * app.T + double(en * eN) * k * app.B);
    out.E = (-1.0 / PE) * double(en * eT) *
            (double(eN) * k * app.T + double(et) * kap * app.B);

    const int eTphi = sign_of(inner_h(out.T, out.T, ctx));
    const int eNphi = sign_of(inner_h(out.N, out.N, ctx));
    out.eps_b_star = eTphi * sign_of(inner_h(out.E, out.E, ctx));
    out.B = double(en * eb * out.eps_b_star) * app.E;

    out.eta_used = +1;
    if (det4(out.T, out.N, out.B, out.E) < 0.0) {
        out.E = -1.0 * out.E;
        out.eta_used = -1;
    }

    out.kappa = eNphi * P;
    // with constant curvatures the wedge norm collapses to |k r~| PE
    const double wnorm = std::abs(k * rt) * PE;
    out.k_star = eNphi * wnorm / P2;
    out.third_star = 0.0;
    if (wnorm > 1e-9 * scale) {
        const double aT = kap * (en * k * k + kap * kap);
        const double aB = -et * en * eN * k * (en * k * k + kap * kap) - eb * eN * k * rt * rt;
        const SemiQuaternion d4 = aT * app.T + aB * app.B;
        out.third_star = out.eps_b_star * eTphi * eNphi * inner_h(d4, out.E, ctx) * P / wnorm;
    }
    return out;
}

CurvatureDerivs numeric_curvature_derivs(const CurveSpec& xi, double s, const MetricContext& ctx,
                                         double h) {
    if (!(h > 0.0)) throw ConfigError("curvature derivative step must be positive");
    const FrenetApparatus4 m2 = frenet_apparatus(xi, s - 2.0 * h, ctx);
    const FrenetApparatus4 m1 = frenet_apparatus(xi, s - h, ctx);
    const FrenetApparatus4 p0 = frenet_apparatus(xi, s, ctx);
    const FrenetApparatus4 p1 = frenet_apparatus(xi, s + h, ctx);
    const FrenetApparatus4 p2 = frenet_apparatus(xi, s + 2.0 * h, ctx);

    auto d1 = [h](double a, double b, double c, double e) {
        return (a - 8.0 * b + 8.0 * c - e) / (12.0 * h);
    };
    auto d2 = [h](double a, double b, double c0, double c, double e) {
        return (-a + 16.0 * b - 30.0 * c0 + 16.0 * c - e) / (12.0 * h * h);
    };

    CurvatureDerivs out;
    out.kappa1 = d1(m2.kappa, m1.kappa, p1.kappa, p2.kappa);
    out.k1 = d1(m2.k, m1.k, p1.k, p2.k);
    out.third1 = d1(m2.third, m1.third, p1.third, p2.third);
    out.kappa2 = d2(m2.kappa, m1.kappa, p0.kappa, p1.kappa, p2.kappa);
    out.k2 = d2(m2.k, m1.k, p0.k, p1.k, p2.k);
    return out;
}

} // namespace semiquat
