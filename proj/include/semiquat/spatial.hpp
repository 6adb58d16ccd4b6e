#pragma once

#include "semiquat/curve.hpp"
#include "semiquat/frenet.hpp"
#include "semiquat/involute.hpp"
#include "semiquat/metric.hpp"

namespace semiquat {

/// Frenet data of a curve living in the vector part (metric g).
struct SpatialFrenet3 {
    double s = 0.0;
    SemiQuaternion t, n, b;  // spatial: zero scalar part
    double k = 0.0;          // curvature, nonnegative
    double r = 0.0;          // torsion, signed
};

/// Spatial companion of a 4D apparatus via the quaternion products
/// t = N x conj(T), n = B x conj(T), b = E x conj(T).  Fails with
/// ExtractionFailure when a product has a nonzero scalar part (the
/// ambient signature does not support the reduction).
SpatialFrenet3 extract_spatial_frame(const FrenetApparatus4& app, const MetricContext& ctx);

/// Direct Frenet data of a purely spatial curve alpha at s.
SpatialFrenet3 spatial_frenet(const CurveSpec& alpha, double s, const MetricContext& ctx);

/// Curve alpha with alpha'(s) = t(s), the extracted spatial tangent of
/// xi, anchored at alpha(s_ref) = alpha_ref.
CurveSpec associated_spatial_curve(const CurveSpec& xi, const MetricContext& ctx,
                                   double s_ref, const SemiQuaternion& alpha_ref);

/// Spatial tangent t* of the involute at s, reduced from the
/// transferred tangent plane (throws DegenerateTransfer when that
/// plane collapses).
SemiQuaternion involute_spatial_tangent(const InvolutePair& pair, const MetricContext& ctx, double s);

struct SpatialExclusionReport {
    int samples = 0;            // regular samples actually used
    double max_h_deviation = 0.0;  // worst |h(t, t*) + 1|
    double max_abs_g = 0.0;        // worst |g(t*, n)|
    double min_gap = 1.0;          // 1 - |g(t*,n)| / (N3(t*) N3(n))
    double max_scalar_part = 0.0;  // worst |scalar part of t x t*|
    bool contradiction = false;    // t* is never collinear with n
};

/// Samples the involute's spatial tangent t* against the evolute's
/// spatial normal n.  In the Euclidean picture those are collinear;
/// here t* stays g-orthogonal to n, which the report quantifies.
SpatialExclusionReport check_spatial_exclusion(const InvolutePair& pair, const MetricContext& ctx,
                                               int samples, double tol);

} // namespace semiquat
