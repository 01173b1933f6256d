#pragma once

namespace rydberg::constants {

/// One atomic unit of time in seconds. Every SI conversion in the project
/// flows through this single constant.
inline constexpr double atomic_unit_of_time_s = 2.4188843265857e-17;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 6.28318530717958647692;

/// Residual 2*pi - double(2*pi), used by the phase-reduction path.
inline constexpr double two_pi_tail = 2.4492935982947064e-16;

inline constexpr const char* artifact_version = "1.0.0";

} // namespace rydberg::constants
