#pragma once

#include <Eigen/Core>
#include <cmath>

#include "aerostate/core/angles.hpp"

namespace aerostate {

/// Planar pose: position in meters, heading in radians wrapped to (-pi, pi].
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Eigen::Vector2d position() const { return {x, y}; }
  friend bool operator==(const Pose2D&, const Pose2D&) = default;
};

inline Eigen::Matrix2d rotation2d(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

/// Maps a body-frame offset to world coordinates.
inline Eigen::Vector2d body_to_world(const Pose2D& pose, const Eigen::Vector2d& offset) {
  return pose.position() + rotation2d(pose.theta) * offset;
}

inline Eigen::Vector2d world_to_body(const Pose2D& pose, const Eigen::Vector2d& point) {
  return rotation2d(pose.theta).transpose() * (point - pose.position());
}

}  // namespace aerostate
