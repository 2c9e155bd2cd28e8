#pragma once

#include <cmath>
#include <numbers>
#include <utility>

namespace aniso {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Wraps `value` into [0, period).
inline double wrap(double value, double period) {
  double r = std::fmod(value, period);
  if (r < 0.0) r += period;
  // fmod of a tiny negative number plus period can round up to period.
  if (r >= period) r = 0.0;
  return r;
}

/// (sin, cos) of an angle in degrees, exact on multiples of 90 degrees.
inline std::pair<double, double> sincos_deg(double deg) {
  const double w = wrap(deg, 360.0);
  if (w == 0.0) return {0.0, 1.0};
  if (w == 90.0) return {1.0, 0.0};
  if (w == 180.0) return {0.0, -1.0};
  if (w == 270.0) return {-1.0, 0.0};
  const double rad = deg_to_rad(w);
  return {std::sin(rad), std::cos(rad)};
}

/// Smallest distance between two angles on a circle of the given period.
inline double circular_distance(double a, double b, double period) {
  const double d = wrap(std::abs(a - b), period);
  return d < period - d ? d : period - d;
}

}  // namespace aniso
