#pragma once

#include <cmath>
#include <numbers>
#include <span>

namespace aerostate {

// Wraps to (-pi, pi].
inline double angle_wrap(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(angle, kTwoPi);
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Weighted circular mean. Weights need not be normalized.
inline double circular_mean(std::span<const double> angles, std::span<const double> weights) {
  double s = 0.0;
  double c = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    s += weights[i] * std::sin(angles[i]);
    c += weights[i] * std::cos(angles[i]);
  }
  return angle_wrap(std::atan2(s, c));
}

}  // namespace aerostate
