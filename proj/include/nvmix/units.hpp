#pragma once

#include <numbers>

namespace nvmix {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;

// Every frequency inside the library is an angular frequency in rad/s.
// These helpers convert ordinary frequencies at the boundary.
constexpr double hz(double f) { return kTwoPi * f; }
constexpr double khz(double f) { return kTwoPi * f * 1e3; }
constexpr double mhz(double f) { return kTwoPi * f * 1e6; }
constexpr double ghz(double f) { return kTwoPi * f * 1e9; }

constexpr double to_hz(double omega) { return omega / kTwoPi; }
constexpr double to_mhz(double omega) { return omega / kTwoPi * 1e-6; }
constexpr double to_ghz(double omega) { return omega / kTwoPi * 1e-9; }

constexpr double degrees(double deg) { return deg * kPi / 180.0; }

}  // namespace nvmix
