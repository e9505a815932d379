#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "aerostate/core/angles.hpp"
#include "aerostate/core/errors.hpp"

namespace aerostate {

/// Roll/pitch/yaw in radians, intrinsic Z-Y-X convention.
struct EulerAttitude {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;

  friend bool operator==(const EulerAttitude&, const EulerAttitude&) = default;
};

inline bool is_valid(const EulerAttitude& att) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  return std::isfinite(att.roll) && std::isfinite(att.pitch) && std::isfinite(att.yaw) &&
         std::abs(att.roll) < kHalfPi && std::abs(att.pitch) < kHalfPi;
}

/// Hamilton quaternion (w + xi + yj + zk). Composition renormalizes so that
/// chains of products stay on the unit sphere.
struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static Quaternion identity() { return {}; }

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  Quaternion normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  Quaternion conjugate() const { return {w, -x, -y, -z}; }

  /// Raw Hamilton product, no renormalization.
  static Quaternion hamilton(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return hamilton(a, b).normalized();
  }
};

inline constexpr double kUnitQuaternionTolerance = 1e-6;

/// Rotates v by q as q * (0, v) * q^*. With q built from an attitude, this
/// maps body-frame vectors into the world frame.
inline Eigen::Vector3d quat_rotate(const Quaternion& q, const Eigen::Vector3d& v) {
  if (std::abs(q.norm() - 1.0) > kUnitQuaternionTolerance) {
    throw InvalidArgument("quat_rotate: quaternion is not unit-norm");
  }
  const Quaternion p{0.0, v.x(), v.y(), v.z()};
  const Quaternion r = Quaternion::hamilton(Quaternion::hamilton(q, p), q.conjugate());
  return {r.x, r.y, r.z};
}

/// q = qz(yaw) * qy(pitch) * qx(roll).
inline Quaternion quat_from_euler(const EulerAttitude& att) {
  const double cr = std::cos(att.roll / 2.0), sr = std::sin(att.roll / 2.0);
  const double cp = std::cos(att.pitch / 2.0), sp = std::sin(att.pitch / 2.0);
  const double cy = std::cos(att.yaw / 2.0), sy = std::sin(att.yaw / 2.0);
  return Quaternion{cy * cp * cr + sy * sp * sr,
                    cy * cp * sr - sy * sp * cr,
                    cy * sp * cr + sy * cp * sr,
                    sy * cp * cr - cy * sp * sr}
      .normalized();
}

inline EulerAttitude euler_from_quat(const Quaternion& qin) {
  const Quaternion q = qin.normalized();
  EulerAttitude att;
  att.roll = std::atan2(2.0 * (q.w * q.x + q.y * q.z), 1.0 - 2.0 * (q.x * q.x + q.y * q.y));
  const double s = std::clamp(2.0 * (q.w * q.y - q.z * q.x), -1.0, 1.0);
  att.pitch = std::asin(s);
  att.yaw = std::atan2(2.0 * (q.w * q.z + q.x * q.y), 1.0 - 2.0 * (q.y * q.y + q.z * q.z));
  return att;
}

}  // namespace aerostate
