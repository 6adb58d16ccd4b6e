#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "semiquat/errors.hpp"

namespace semiquat {

/// Truncated Taylor series: c[k] = f^(k)(s0)/k!.  Arithmetic on jets
/// propagates exact derivatives through curve formulas without any
/// finite differencing.
template <int N>
struct Jet {
    static_assert(N >= 1);
    std::array<double, N + 1> c{};

    static Jet constant(double a) {
        Jet j;
        j.c[0] = a;
        return j;
    }
    static Jet variable(double x0) {
        Jet j;
        j.c[0] = x0;
        j.c[1] = 1.0;
        return j;
    }

    double value() const { return c[0]; }

    /// f^(k)(s0), recovered from the stored coefficient.
    double derivative(int k) const {
        double f = c[k];
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    }

    Jet operator+(const Jet& o) const {
        Jet r;
        for (int i = 0; i <= N; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Jet operator-(const Jet& o) const {
        Jet r;
        for (int i = 0; i <= N; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Jet operator-() const {
        Jet r;
        for (int i = 0; i <= N; ++i) r.c[i] = -c[i];
        return r;
    }
    Jet operator*(const Jet& o) const {
        Jet r;
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j) r.c[i + j] += c[i] * o.c[j];
        return r;
    }
    Jet operator*(double a) const {
        Jet r;
        for (int i = 0; i <= N; ++i) r.c[i] = a * c[i];
        return r;
    }
    Jet operator+(double a) const {
        Jet r = *this;
        r.c[0] += a;
        return r;
    }
    Jet operator-(double a) const {
        Jet r = *this;
        r.c[0] -= a;
        return r;
    }

    Jet operator/(const Jet& o) const {
        if (o.c[0] == 0.0) throw Error("jet division by a series with zero constant term");
        Jet r;
        for (int i = 0; i <= N; ++i) {
            double acc = c[i];
            for (int j = 0; j < i; ++j) acc -= r.c[j] * o.c[i - j];
            r.c[i] = acc / o.c[0];
        }
        return r;
    }
};

template <int N>
Jet<N> operator*(double a, const Jet<N>& j) {
    return j * a;
}

namespace jets {

// Composition with an analytic f given the derivative cycle at u0:
// f(u) = sum f^(k)(u0)/k! * (u - u0)^k, truncated at order N.
template <int N, class DerivAt>
Jet<N> compose(const Jet<N>& u, DerivAt&& fk) {
    Jet<N> du = u;
    du.c[0] = 0.0;
    Jet<N> pow = Jet<N>::constant(1.0);
    Jet<N> r = Jet<N>::constant(fk(0));
    double fact = 1.0;
    for (int k = 1; k <= N; ++k) {
        pow = pow * du;
        fact *= k;
        r = r + pow * (fk(k) / fact);
    }
    return r;
}

template <int N>
Jet<N> sin(const Jet<N>& u) {
    double s0 = std::sin(u.c[0]), c0 = std::cos(u.c[0]);
    return compose(u, [&](int k) {
        switch (k % 4) {
            case 0: return s0;
            case 1: return c0;
            case 2: return -s0;
            default: return -c0;
        }
    });
}

template <int N>
Jet<N> cos(const Jet<N>& u) {
    double s0 = std::sin(u.c[0]), c0 = std::cos(u.c[0]);
    return compose(u, [&](int k) {
        switch (k % 4) {
            case 0: return c0;
            case 1: return -s0;
            case 2: return -c0;
            default: return s0;
        }
    });
}

template <int N>
Jet<N> sinh(const Jet<N>& u) {
    double s0 = std::sinh(u.c[0]), c0 = std::cosh(u.c[0]);
    return compose(u, [&](int k) { return k % 2 ? c0 : s0; });
}

template <int N>
Jet<N> cosh(const Jet<N>& u) {
    double s0 = std::sinh(u.c[0]), c0 = std::cosh(u.c[0]);
    return compose(u, [&](int k) { return k % 2 ? s0 : c0; });
}

template <int N>
Jet<N> exp(const Jet<N>& u) {
    double e0 = std::exp(u.c[0]);
    return compose(u, [&](int) { return e0; });
}

template <int N>
Jet<N> sqrt(const Jet<N>& u) {
    if (u.c[0] <= 0.0) throw Error("jet sqrt requires a positive constant term");
    Jet<N> r;
    r.c[0] = std::sqrt(u.c[0]);
    // (r*r = u) solved coefficient by coefficient.
    for (int i = 1; i <= N; ++i) {
        double acc = u.c[i];
        for (int j = 1; j < i; ++j) acc -= r.c[j] * r.c[i - j];
        r.c[i] = acc / (2.0 * r.c[0]);
    }
    return r;
}

} // namespace jets
} // namespace semiquat
