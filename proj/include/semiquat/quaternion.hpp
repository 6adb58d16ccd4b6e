#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "semiquat/errors.hpp"
#include "semiquat/metric.hpp"

namespace semiquat {

/// q = q1*e1 + q2*e2 + q3*e3 + q4, with q4 the scalar part.
struct SemiQuaternion {
    double q1 = 0.0, q2 = 0.0, q3 = 0.0, q4 = 0.0;

    double operator[](int i) const { return i == 0 ? q1 : i == 1 ? q2 : i == 2 ? q3 : q4; }
    double& operator[](int i) { return i == 0 ? q1 : i == 1 ? q2 : i == 2 ? q3 : q4; }

    SemiQuaternion operator+(const SemiQuaternion& o) const { return {q1 + o.q1, q2 + o.q2, q3 + o.q3, q4 + o.q4}; }
    SemiQuaternion operator-(const SemiQuaternion& o) const { return {q1 - o.q1, q2 - o.q2, q3 - o.q3, q4 - o.q4}; }
    SemiQuaternion operator-() const { return {-q1, -q2, -q3, -q4}; }
    SemiQuaternion operator*(double a) const { return {a * q1, a * q2, a * q3, a * q4}; }
    SemiQuaternion operator/(double a) const { return {q1 / a, q2 / a, q3 / a, q4 / a}; }
    SemiQuaternion& operator+=(const SemiQuaternion& o) { q1 += o.q1; q2 += o.q2; q3 += o.q3; q4 += o.q4; return *this; }
    SemiQuaternion& operator-=(const SemiQuaternion& o) { q1 -= o.q1; q2 -= o.q2; q3 -= o.q3; q4 -= o.q4; return *this; }
};

inline SemiQuaternion operator*(double a, const SemiQuaternion& q) { return q * a; }

inline double linf(const SemiQuaternion& q) {
    return std::max(std::max(std::abs(q.q1), std::abs(q.q2)), std::max(std::abs(q.q3), std::abs(q.q4)));
}

enum class Causality { Spacelike, Timelike, Null };

/// The sign of h(x,x) for a non-null x.
struct CausalSign {
    int value = +1;
};

inline SemiQuaternion conjugate(const SemiQuaternion& q) { return {-q.q1, -q.q2, -q.q3, q.q4}; }

/// (temporal, spatial) halves; temporal + spatial == q exactly.
inline std::pair<SemiQuaternion, SemiQuaternion> decompose(const SemiQuaternion& q) {
    return {SemiQuaternion{0, 0, 0, q.q4}, SemiQuaternion{q.q1, q.q2, q.q3, 0}};
}

inline double inner_h(const SemiQuaternion& p, const SemiQuaternion& q, const MetricContext& ctx) {
    const auto& e = ctx.ambient_signs;
    return e[0] * p.q1 * q.q1 + e[1] * p.q2 * q.q2 + e[2] * p.q3 * q.q3 + e[3] * p.q4 * q.q4;
}

inline double norm_N(const SemiQuaternion& q, const MetricContext& ctx) {
    return std::sqrt(std::abs(inner_h(q, q, ctx)));
}

/// g restricted to the vector part (the E3_1 form); scalar parts ignored.
inline double inner_g(const SemiQuaternion& u, const SemiQuaternion& v, const MetricContext& ctx) {
    const auto& e = ctx.spatial_signs;
    return e[0] * u.q1 * v.q1 + e[1] * u.q2 * v.q2 + e[2] * u.q3 * v.q3;
}

inline double norm_g(const SemiQuaternion& u, const MetricContext& ctx) {
    return std::sqrt(std::abs(inner_g(u, u, ctx)));
}

/// tol is relative to the largest component magnitude squared.
inline Causality classify(const SemiQuaternion& q, const MetricContext& ctx, double tol) {
    if (tol <= 0) throw ConfigError("classify tolerance must be positive");
    double scale = linf(q);
    double h = inner_h(q, q, ctx);
    if (std::abs(h) <= tol * scale * scale) return Causality::Null;
    return h > 0 ? Causality::Spacelike : Causality::Timelike;
}

inline Causality classify(const SemiQuaternion& q, const MetricContext& ctx) {
    return classify(q, ctx, ctx.null_tol);
}

inline CausalSign causal_sign(const SemiQuaternion& q, const MetricContext& ctx, double tol) {
    switch (classify(q, ctx, tol)) {
        case Causality::Spacelike: return {+1};
        case Causality::Timelike: return {-1};
        default: throw NullQuaternionError("causal sign undefined for a null quaternion");
    }
}

inline CausalSign causal_sign(const SemiQuaternion& q, const MetricContext& ctx) {
    return causal_sign(q, ctx, ctx.null_tol);
}

inline bool is_spatial(const SemiQuaternion& q, const MetricContext& ctx) {
    return std::abs(q.q4) <= ctx.null_tol * std::max(1.0, linf(q));
}

/// Quaternion product from the basis rules e_i*e_i = -eps_i and
/// e_i*e_j = -eps_i*eps_j*e_k ((ijk) even); associative for any signs.
inline SemiQuaternion quat_mul(const SemiQuaternion& p, const SemiQuaternion& q, const MetricContext& ctx) {
    const double e1 = ctx.ambient_signs[0], e2 = ctx.ambient_signs[1], e3 = ctx.ambient_signs[2];
    SemiQuaternion r;
    r.q4 = p.q4 * q.q4 - e1 * p.q1 * q.q1 - e2 * p.q2 * q.q2 - e3 * p.q3 * q.q3;
    r.q1 = p.q4 * q.q1 + q.q4 * p.q1 - e2 * e3 * (p.q2 * q.q3 - p.q3 * q.q2);
    r.q2 = p.q4 * q.q2 + q.q4 * p.q2 - e3 * e1 * (p.q3 * q.q1 - p.q1 * q.q3);
    r.q3 = p.q4 * q.q3 + q.q4 * p.q3 - e1 * e2 * (p.q1 * q.q2 - p.q2 * q.q1);
    return r;
}

/// Vector part of the product of two spatial quaternions.
inline SemiQuaternion cross3(const SemiQuaternion& u, const SemiQuaternion& v, const MetricContext& ctx) {
    if (!is_spatial(u, ctx) || !is_spatial(v, ctx))
        throw NonSpatialInput("cross3 requires spatial quaternions (zero scalar part)");
    const double e1 = ctx.spatial_signs[0], e2 = ctx.spatial_signs[1], e3 = ctx.spatial_signs[2];
    return {-e2 * e3 * (u.q2 * v.q3 - u.q3 * v.q2),
            -e3 * e1 * (u.q3 * v.q1 - u.q1 * v.q3),
            -e1 * e2 * (u.q1 * v.q2 - u.q2 * v.q1),
            0.0};
}

namespace detail {
// 3x3 determinant of rows a,b,c restricted to columns c0,c1,c2.
inline double det3_cols(const SemiQuaternion& a, const SemiQuaternion& b, const SemiQuaternion& c,
                        int c0, int c1, int c2) {
    return a[c0] * (b[c1] * c[c2] - b[c2] * c[c1])
         - a[c1] * (b[c0] * c[c2] - b[c2] * c[c0])
         + a[c2] * (b[c0] * c[c1] - b[c1] * c[c0]);
}
} // namespace detail

/// Coordinate determinant of the four rows in the given order.
inline double det4(const SemiQuaternion& a, const SemiQuaternion& b, const SemiQuaternion& c,
                   const SemiQuaternion& d) {
    using detail::det3_cols;
    // Laplace expansion along the last row.
    return -d[0] * det3_cols(a, b, c, 1, 2, 3)
         + d[1] * det3_cols(a, b, c, 0, 2, 3)
         - d[2] * det3_cols(a, b, c, 0, 1, 3)
         + d[3] * det3_cols(a, b, c, 0, 1, 2);
}

/// Generalized triple product: the unique X with
/// h(X, w) = orientation * det(a, b, c, w) for every w.
inline SemiQuaternion wedge4(const SemiQuaternion& a, const SemiQuaternion& b, const SemiQuaternion& c,
                             const MetricContext& ctx) {
    using detail::det3_cols;
    const double eta = static_cast<double>(ctx.orientation);
    const auto& e = ctx.ambient_signs;
    SemiQuaternion x;
    x.q1 = -eta * e[0] * det3_cols(a, b, c, 1, 2, 3);
    x.q2 = eta * e[1] * det3_cols(a, b, c, 0, 2, 3);
    x.q3 = -eta * e[2] * det3_cols(a, b, c, 0, 1, 3);
    x.q4 = eta * e[3] * det3_cols(a, b, c, 0, 1, 2);
    return x;
}

} // namespace semiquat
