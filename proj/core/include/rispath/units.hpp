#pragma once

#include <cmath>
#include <limits>
#include <numbers>

namespace rispath {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Power in dBm; 0 W maps to -infinity.
inline double watts_to_dbm(double watts) {
  if (watts <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(watts / 1e-3);
}

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

/// Wrap an angle into [0, 2*pi).
inline double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // guards the rounding case r + 2*pi == 2*pi
  return r;
}

/// sin(x)/x with the removable singularity patched by series below 1e-8.
inline double sinc_unnormalized(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace rispath
