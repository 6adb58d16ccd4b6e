#pragma once

#include <stdexcept>
#include <string>

namespace semiquat {

/// Base type for every error the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid run or metric configuration (bad signature, empty grid, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// Curve evaluated outside its parameter domain.
struct OutOfDomain : Error {
    using Error::Error;
};

/// Finite-difference stencil would read outside the curve domain.
struct StencilOverflow : Error {
    using Error::Error;
};

/// Speed norm fell below the null tolerance during arc-length work.
struct NullSpeedPoint : Error {
    using Error::Error;
};

/// The curve is not unit speed where unit speed is required.
struct NotUnitSpeed : Error {
    using Error::Error;
};

/// The acceleration (curvature vector) is null or vanishes.
struct NullCurvatureVector : Error {
    using Error::Error;
};

/// A frame vector could not be normalized (null wedge, lost rank, ...).
struct DegenerateFrame : Error {
    using Error::Error;
};

/// Frame or curvature of an involute requested inside the guard band
/// around a singular parameter value.
struct SingularInvolutePoint : Error {
    using Error::Error;
};

/// The general frame-transfer formulas lose rank for this input.
struct DegenerateTransfer : Error {
    using Error::Error;
};

/// Constant-curvature transfer requested for a curve whose curvature
/// derivatives are not zero within tolerance.
struct NotWCurve : Error {
    using Error::Error;
};

/// cross3 or a spatial-only operation received a non-spatial quaternion.
struct NonSpatialInput : Error {
    using Error::Error;
};

/// Spatial frame extraction produced a vector with a non-negligible
/// scalar part (possible under the alternate signature).
struct ExtractionFailure : Error {
    using Error::Error;
};

/// A curve fed to the 3-space routines has a non-zero scalar component.
struct NonSpatialCurve : Error {
    using Error::Error;
};

/// Causal sign requested for a null quaternion.
struct NullQuaternionError : Error {
    using Error::Error;
};

/// Formats "what happened at s = value" messages consistently.
inline std::string at_param(const std::string& what, double s) {
    return what + " at s = " + std::to_string(s);
}

} // namespace semiquat
