#pragma once

#include <optional>
#include <vector>

#include "semiquat/curve.hpp"
#include "semiquat/frenet.hpp"
#include "semiquat/metric.hpp"

namespace semiquat {

/// An evolute together with the involute phi(s) = xi(s) + (c-s)T(s).
/// Both curves share the parameter s; the involute's own arc length
/// comes from reparameterization when needed.
struct InvolutePair {
    CurveSpec evolute;
    CurveSpec involute;
    double c = 0.0;
    std::vector<double> singular_set;  // where (c-s)*kappa(s) vanishes
    double guard = 0.0;                // refusal half-width around singular points
};

/// First and second derivatives of the curvature functions of the
/// evolute (with respect to its arc length).
struct CurvatureDerivs {
    double kappa1 = 0.0, k1 = 0.0, third1 = 0.0;
    double kappa2 = 0.0, k2 = 0.0;
};

/// Frame and curvatures of the involute predicted from the evolute's
/// apparatus alone.  third_star requires second curvature derivatives
/// and is absent when they were not supplied.
struct TransferredApparatus {
    SemiQuaternion T, N, B, E;
    double kappa = 0.0;
    double k_star = 0.0;
    std::optional<double> third_star;
    int eta_used = +1;
    int eps_b_star = +1;
};

InvolutePair make_involute(const CurveSpec& xi, const MetricContext& ctx, double c);

/// True when frame evaluation at s is safely away from cusps.
bool is_regular(const InvolutePair& pair, const MetricContext& ctx, double s);
void require_regular(const InvolutePair& pair, const MetricContext& ctx, double s);

/// norm_N(phi(s) - xi(s)); the distance law says this equals |c - s|.
double involute_distance(const InvolutePair& pair, const MetricContext& ctx, double s);

struct PairCheck {
    bool is_pair = false;
    double max_abs_h = 0.0;  // worst |h(unit phi', T_xi)| over the samples
    double worst_s = 0.0;
    int regular_samples = 0;
};

/// Tangency test of the involute definition under the parameter
/// pairing s* <-> s; singular samples are skipped.
PairCheck is_involute_pair(const CurveSpec& phi, const CurveSpec& xi, const MetricContext& ctx,
                           int samples, double tol);

/// Frame transfer; needs first curvature derivatives only.
TransferredApparatus transfer_frame(const FrenetApparatus4& app, const CurvatureDerivs& d,
                                    const MetricContext& ctx);

/// Frame plus all three transferred curvatures; needs second
/// curvature derivatives.
TransferredApparatus transfer_curvatures(const FrenetApparatus4& app, const CurvatureDerivs& d,
                                         const MetricContext& ctx);

/// Constant-curvature specialization.  kappa1/k1 are the evolute's
/// curvature derivatives, checked against deriv_tol.
TransferredApparatus w_curve_transfer(const FrenetApparatus4& app, const MetricContext& ctx,
                                      double kappa1 = 0.0, double k1 = 0.0, double deriv_tol = 1e-8);

/// Curvature derivatives by order-4 finite differences on the
/// apparatus of xi around s (step h in arc length).
CurvatureDerivs numeric_curvature_derivs(const CurveSpec& xi, double s, const MetricContext& ctx, double h);

} // namespace semiquat
