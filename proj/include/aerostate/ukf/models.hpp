#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>

#include "aerostate/core/angles.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/core/quaternion.hpp"

namespace aerostate::ukf {

/// Altitude and vertical velocity.
struct State2 {
  double z = 0.0;
  double z_dot = 0.0;

  Eigen::Vector2d vec() const { return {z, z_dot}; }
  static State2 from(const Eigen::VectorXd& v) { return {v(0), v(1)}; }
};

/// Position, velocity and yaw.
struct State7 {
  double x = 0.0, y = 0.0, z = 0.0;
  double x_dot = 0.0, y_dot = 0.0, z_dot = 0.0;
  double yaw = 0.0;

  Eigen::VectorXd vec() const {
    Eigen::VectorXd v(7);
    v << x, y, z, x_dot, y_dot, z_dot, yaw;
    return v;
  }
  static State7 from(const Eigen::VectorXd& v) {
    return {v(0), v(1), v(2), v(3), v(4), v(5), v(6)};
  }
};

inline constexpr Eigen::Index kYawIndex = 6;

/// World-frame vertical acceleration.
struct Control2 {
  double z_ddot = 0.0;
};

/// Body-frame linear acceleration, gravity removed.
struct Control7Body {
  double x_ddot_b = 0.0, y_ddot_b = 0.0, z_ddot_b = 0.0;

  Eigen::Vector3d vec() const { return {x_ddot_b, y_ddot_b, z_ddot_b}; }
};

struct Measurement2 {
  double r = 0.0;
};

/// Any subset of (slant range, x, y, x_dot, y_dot, camera yaw). Missing
/// components are simply not fused.
struct Measurement7 {
  std::optional<double> r, x, y, x_dot, y_dot, yaw;

  static constexpr int kSize = 6;
  std::optional<double> component(int i) const {
    switch (i) {
      case 0: return r;
      case 1: return x;
      case 2: return y;
      case 3: return x_dot;
      case 4: return y_dot;
      default: return yaw;
    }
  }
};

inline void require_positive_dt(double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
}

/// Constant-acceleration vertical kinematics.
inline State2 g2(const State2& prev, const Control2& u, double dt) {
  require_positive_dt(dt);
  return {prev.z + prev.z_dot * dt + 0.5 * u.z_ddot * dt * dt, prev.z_dot + u.z_ddot * dt};
}

inline Measurement2 h2(const State2& state) { return {state.z}; }

/// Rotates body acceleration into the world frame using the IMU's roll and
/// pitch and the filter's yaw.
inline Eigen::Vector3d control_body_to_global(const Control7Body& u, const EulerAttitude& attitude,
                                              double yaw_state) {
  const Quaternion q = quat_from_euler({attitude.roll, attitude.pitch, yaw_state});
  return quat_rotate(q, u.vec());
}

/// Yaw carries no process motion; it changes only through measurements.
inline State7 g7(const State7& prev, const Eigen::Vector3d& accel_global, double dt) {
  require_positive_dt(dt);
  const double half_dt2 = 0.5 * dt * dt;
  State7 next = prev;
  next.x += prev.x_dot * dt + half_dt2 * accel_global.x();
  next.y += prev.y_dot * dt + half_dt2 * accel_global.y();
  next.z += prev.z_dot * dt + half_dt2 * accel_global.z();
  next.x_dot += accel_global.x() * dt;
  next.y_dot += accel_global.y() * dt;
  next.z_dot += accel_global.z() * dt;
  return next;
}

inline constexpr double kMinTiltCosine = 1e-6;

/// Full measurement vector (r, x, y, x_dot, y_dot, yaw); r is the slant range
/// seen by a body-fixed downward rangefinder.
inline Eigen::Matrix<double, 6, 1> h7(const State7& state, const EulerAttitude& attitude) {
  const double tilt = std::cos(attitude.pitch) * std::cos(attitude.roll);
  if (!(tilt > kMinTiltCosine)) throw SingularAttitude("h7: attitude too close to vertical");
  Eigen::Matrix<double, 6, 1> z;
  z << state.z / tilt, state.x, state.y, state.x_dot, state.y_dot, state.yaw;
  return z;
}

}  // namespace aerostate::ukf
