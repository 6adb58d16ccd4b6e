#pragma once

#include <array>
#include <string>

#include "semiquat/errors.hpp"

namespace semiquat {

/// Ambient signature and orientation data threaded through every
/// computation.  `ambient_signs` lists the signs (e1, e2, e3, scalar);
/// exactly two must be -1.  `spatial_signs` is the restriction to the
/// pure-vector subspace and must equal the first three ambient entries.
struct MetricContext {
    std::array<int, 4> ambient_signs{-1, -1, +1, +1};
    std::array<int, 3> spatial_signs{-1, -1, +1};
    int orientation = +1;
    double null_tol = 1e-9;

    void validate() const {
        int minus = 0;
        for (int e : ambient_signs) {
            if (e != 1 && e != -1) throw ConfigError("ambient signs must be +1 or -1");
            if (e == -1) ++minus;
        }
        if (minus != 2) throw ConfigError("ambient signature must have exactly two -1 entries");
        for (int i = 0; i < 3; ++i)
            if (spatial_signs[i] != ambient_signs[i])
                throw ConfigError("spatial signs must restrict the ambient signs");
        if (orientation != 1 && orientation != -1)
            throw ConfigError("orientation must be +1 or -1");
        if (null_tol <= 0) throw ConfigError("null_tol must be positive");
    }
};

/// The two signatures the CLI exposes by name.
inline MetricContext metric_default() { return MetricContext{}; }

inline MetricContext metric_paper24() {
    MetricContext ctx;
    ctx.ambient_signs = {+1, +1, -1, -1};
    ctx.spatial_signs = {+1, +1, -1};
    return ctx;
}

inline MetricContext metric_by_name(const std::string& name) {
    if (name == "default") return metric_default();
    if (name == "paper24") return metric_paper24();
    throw ConfigError("unknown metric name: " + name);
}

} // namespace semiquat
