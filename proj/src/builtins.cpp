#include "semiquat/builtins.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "semiquat/errors.hpp"
#include "semiquat/jet.hpp"
#include "semiquat/quaternion.hpp"

namespace semiquat {

namespace {

constexpr int kJetOrder = 8;
using J = Jet<kJetOrder>;

/// c0 + lin*s + amp*sin(om*s + ph), as a jet factory.
struct Wave {
    double c0 = 0.0, lin = 0.0, amp = 0.0, om = 1.0, ph = 0.0;
    J at(double s) const {
        const J x = J::variable(s);
        return J::constant(c0) + x * lin + jets::sin(x * om + ph) * amp;
    }
};

/// Curve defined by exact tangent jets: derivatives come from the jet
/// coefficients, the position from a cached quadrature of the tangent.
CurveSpec make_quadrature_curve(double lo, double hi, std::string label,
                                std::function<std::array<J, 4>(double)> tangent_jets) {
    auto tj = std::make_shared<std::function<std::array<J, 4>(double)>>(std::move(tangent_jets));
    auto tangent = [tj](double s) {
        const auto c = (*tj)(s);
        return SemiQuaternion{c[0].value(), c[1].value(), c[2].value(), c[3].value()};
    };
    CurveSpec out;
    out.s_min = lo;
    out.s_max = hi;
    out.label = std::move(label);
    out.position = detail::cumulative_integral(tangent, lo, hi);
    AnalyticMode mode;
    mode.max_order = kJetOrder + 1;
    mode.deriv = [tj](double s, int n) {
        const auto c = (*tj)(s);
        return SemiQuaternion{c[0].derivative(n - 1), c[1].derivative(n - 1),
                              c[2].derivative(n - 1), c[3].derivative(n - 1)};
    };
    out.mode = mode;
    return out;
}

} // namespace

CurveSpec example_curve() {
    const double r2 = std::sqrt(2.0);
    CurveSpec out;
    out.s_min = -1.5;
    out.s_max = 1.5;
    out.label = "example31";
    out.position = [r2](double s) {
        return SemiQuaternion{std::cosh(s), r2 * s, std::sinh(s), r2};
    };
    AnalyticMode mode;
    mode.max_order = 32;
    mode.deriv = [r2](double s, int n) {
        const bool odd = n % 2 == 1;
        return SemiQuaternion{odd ? std::sinh(s) : std::cosh(s), n == 1 ? r2 : 0.0,
                              odd ? std::cosh(s) : std::sinh(s), 0.0};
    };
    out.mode = mode;
    return out;
}

CurveSpec fuzz_slice_curve(unsigned seed, const MetricContext& ctx) {
    ctx.validate();
    std::mt19937 rng(seed * 2654435761u + 17u);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.0, 1.0);

    // h-orthonormal triple spanning the 3-flat, redrawing near-null picks
    std::array<SemiQuaternion, 3> v{};
    std::array<int, 3> eps{};
    for (int i = 0; i < 3; ++i) {
        for (int attempt = 0;; ++attempt) {
            if (attempt > 200) throw Error("slice basis generation failed");
            SemiQuaternion w{uni(rng), uni(rng), uni(rng), uni(rng)};
            for (int j = 0; j < i; ++j)
                w -= double(eps[j]) * inner_h(w, v[j], ctx) * v[j];
            const double hw = inner_h(w, w, ctx);
            if (std::abs(hw) < 0.2) continue;
            eps[i] = hw > 0.0 ? +1 : -1;
            v[i] = w / std::sqrt(std::abs(hw));
            break;
        }
    }
    std::vector<int> minus, plus;
    for (int i = 0; i < 3; ++i) (eps[i] < 0 ? minus : plus).push_back(i);
    // a nondegenerate 3-flat of a (2,2) form carries 1 or 2 timelike axes
    if (minus.empty() || plus.empty()) throw Error("slice basis signature collapsed");

    const Wave m{0.3 * uni(rng), 0.0, 0.3 + 0.3 * pos(rng), 0.7 + 0.6 * pos(rng), 3.14 * uni(rng)};
    const Wave a{3.14 * uni(rng), 0.7 + 0.5 * pos(rng), 0.2 + 0.3 * pos(rng),
                 0.8 + 0.8 * pos(rng), 3.14 * uni(rng)};
    const bool timelike = pos(rng) < 0.5;

    auto tjets = [m, a, v, minus, plus, timelike](double s) {
        const J mj = m.at(s), aj = a.at(s);
        const J ch = jets::cosh(mj), sh = jets::sinh(mj);
        const J ca = jets::cos(aj), sa = jets::sin(aj);
        const bool two_minus = minus.size() == 2;
        std::array<int, 3> idx{};
        std::array<J, 3> co{};
        // hyperbolic-polar splits with h(tangent, tangent) = -1 or +1 exactly
        if (timelike && two_minus) {
            idx = {minus[0], minus[1], plus[0]};
            co = {ch * ca, ch * sa, sh};
        } else if (timelike) {
            idx = {minus[0], plus[0], plus[1]};
            co = {ch, sh * ca, sh * sa};
        } else if (!two_minus) {
            idx = {minus[0], plus[0], plus[1]};
            co = {sh, ch * ca, ch * sa};
        } else {
            idx = {minus[0], minus[1], plus[0]};
            co = {sh * ca, sh * sa, ch};
        }
        std::array<J, 4> comp{};
        for (int t = 0; t < 3; ++t)
            for (int j = 0; j < 4; ++j)
                comp[static_cast<size_t>(j)] =
                    comp[static_cast<size_t>(j)] + co[static_cast<size_t>(t)] * v[static_cast<size_t>(idx[static_cast<size_t>(t)])][j];
        return comp;
    };
    return make_quadrature_curve(-2.0, 2.0, "slice3-" + std::to_string(seed), tjets);
}

CurveSpec fuzz_block_curve(unsigned seed) {
    std::mt19937 rng(seed * 2246822519u + 101u);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    const Wave w{0.4 * uni(rng), 0.0, 0.35 + 0.3 * pos(rng), 0.7 + 0.6 * pos(rng), 3.14 * uni(rng)};
    const Wave a{3.14 * uni(rng), 0.6 + 0.5 * pos(rng), 0.25 + 0.3 * pos(rng),
                 0.8 + 0.7 * pos(rng), 3.14 * uni(rng)};
    const Wave b{3.14 * uni(rng), 0.5 + 0.5 * pos(rng), 0.25 + 0.3 * pos(rng),
                 0.9 + 0.7 * pos(rng), 3.14 * uni(rng)};
    auto tjets = [w, a, b](double s) {
        const J wj = w.at(s), aj = a.at(s), bj = b.at(s);
        const J ch = jets::cosh(wj), sh = jets::sinh(wj);
        // paired rotations keep |h| = 1 under both named signatures
        return std::array<J, 4>{ch * jets::cos(aj), ch * jets::sin(aj),
                                sh * jets::cos(bj), sh * jets::sin(bj)};
    };
    return make_quadrature_curve(-2.0, 2.0, "block2-" + std::to_string(seed), tjets);
}

namespace {

struct Spline {
    std::vector<double> x;
    std::array<std::vector<double>, 4> y;
    std::array<std::vector<double>, 4> m2;  // knot second derivatives

    double eval(int comp, double s) const {
        size_t j = static_cast<size_t>(std::upper_bound(x.begin(), x.end(), s) - x.begin());
        j = std::clamp<size_t>(j, 1, x.size() - 1) - 1;
        const double h = x[j + 1] - x[j];
        const double A = (x[j + 1] - s) / h, B = 1.0 - A;
        const auto& yy = y[static_cast<size_t>(comp)];
        const auto& mm = m2[static_cast<size_t>(comp)];
        return A * yy[j] + B * yy[j + 1]
             + ((A * A * A - A) * mm[j] + (B * B * B - B) * mm[j + 1]) * h * h / 6.0;
    }
};

void solve_natural(const std::vector<double>& x, const std::vector<double>& y,
                   std::vector<double>& m) {
    const size_t n = x.size();
    m.assign(n, 0.0);
    if (n < 3) return;
    std::vector<double> diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    for (size_t i = 2; i + 1 < n; ++i) {
        const double f = (x[i] - x[i - 1]) / diag[i - 1];
        diag[i] -= f * upper[i - 1];
        rhs[i] -= f * rhs[i - 1];
    }
    for (size_t i = n - 2; i >= 1; --i) {
        m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

} // namespace

CurveSpec csv_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open curve file: " + path);

    auto strip = [](std::string t) {
        t.erase(std::remove_if(t.begin(), t.end(),
                               [](unsigned char c) { return std::isspace(c) != 0; }),
                t.end());
        return t;
    };

    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path + ": empty curve file");
    if (strip(line) != "s,q1,q2,q3,q4")
        throw ConfigError(path + ": CSV header must be s,q1,q2,q3,q4");

    auto spline = std::make_shared<Spline>();
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (t.empty()) continue;
        std::replace(t.begin(), t.end(), ',', ' ');
        std::istringstream ss(t);
        std::array<double, 5> vals{};
        std::string extra;
        if (!(ss >> vals[0] >> vals[1] >> vals[2] >> vals[3] >> vals[4]) || (ss >> extra))
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 5 numeric fields");
        if (!spline->x.empty() && !(vals[0] > spline->x.back()))
            throw ConfigError(path + ":" + std::to_string(lineno) + ": s must be strictly increasing");
        spline->x.push_back(vals[0]);
        for (size_t c = 0; c < 4; ++c) spline->y[c].push_back(vals[c + 1]);
    }
    if (spline->x.size() < 8) throw ConfigError(path + ": need at least 8 samples");

    double max_gap = 0.0;
    for (size_t i = 1; i < spline->x.size(); ++i)
        max_gap = std::max(max_gap, spline->x[i] - spline->x[i - 1]);
    for (size_t c = 0; c < 4; ++c) solve_natural(spline->x, spline->y[c], spline->m2[c]);

    CurveSpec out;
    out.s_min = spline->x.front();
    out.s_max = spline->x.back();
    const size_t slash = path.find_last_of("/\\");
    out.label = slash == std::string::npos ? path : path.substr(slash + 1);
    out.position = [spline](double s) {
        return SemiQuaternion{spline->eval(0, s), spline->eval(1, s), spline->eval(2, s),
                              spline->eval(3, s)};
    };
    // the FD step must straddle several knots or it differentiates
    // interpolation wiggle instead of the underlying curve
    out.mode = FiniteDifferenceMode{std::max(1e-3 * (out.s_max - out.s_min), 4.0 * max_gap)};
    return out;
}

CurveSpec curve_by_name(const std::string& name, const MetricContext& ctx) {
    if (name == "example31") return example_curve();
    auto seed_of = [&name](const char* prefix) -> std::optional<unsigned> {
        const std::string p(prefix);
        if (name.rfind(p, 0) != 0) return std::nullopt;
        const std::string tail = name.substr(p.size());
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("curve seed must be a nonnegative integer: " + name);
        return static_cast<unsigned>(std::stoul(tail));
    };
    if (auto s = seed_of("slice3-")) return fuzz_slice_curve(*s, ctx);
    if (auto s = seed_of("block2-")) return fuzz_block_curve(*s);
    if (name.size() > 4 && name.compare(name.size() - 4, 4, ".csv") == 0) return csv_curve(name);
    throw ConfigError("unknown curve: " + name
                      + " (use example31, slice3-<seed>, block2-<seed>, or a .csv path)");
}

} // namespace semiquat
