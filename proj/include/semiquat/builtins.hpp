#pragma once

#include <string>

#include "semiquat/curve.hpp"
#include "semiquat/metric.hpp"

namespace semiquat {

/// The worked hyperbolic curve (cosh s, sqrt2 s, sinh s, sqrt2):
/// unit timelike tangent, constant curvatures, analytic to any order.
CurveSpec example_curve();

/// Seeded unit-speed curve confined to a random 3-flat; the last
/// frame vector is constant, so the final curvature vanishes.
CurveSpec fuzz_slice_curve(unsigned seed, const MetricContext& ctx);

/// Seeded unit-speed curve with all four coordinates active (the
/// final curvature is generically nonzero).
CurveSpec fuzz_block_curve(unsigned seed);

/// Natural-cubic-spline curve from a CSV file with header
/// s,q1,q2,q3,q4 and strictly increasing samples.
CurveSpec csv_curve(const std::string& path);

/// Resolves "example31", "slice3-<seed>", "block2-<seed>", or a
/// path ending in ".csv".
CurveSpec curve_by_name(const std::string& name, const MetricContext& ctx);

} // namespace semiquat
