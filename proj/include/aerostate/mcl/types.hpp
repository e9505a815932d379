#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "aerostate/core/descriptor.hpp"
#include "aerostate/core/pose.hpp"

namespace aerostate::mcl {

struct Particle {
  Pose2D pose;
  double log_weight = 0.0;
};

/// Odometry between two camera frames, expressed in the earlier body frame.
struct MotionDelta {
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;

  friend bool operator==(const MotionDelta&, const MotionDelta&) = default;
};

/// Standard deviations of the odometry noise.
struct MotionNoise {
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double sigma_theta = 0.0;
};

/// Standard deviations of the location measurement; all must be positive.
struct MeasurementNoise {
  double sigma_x = 0.05;
  double sigma_y = 0.05;
  double sigma_theta = 0.1;
};

struct MapFeature {
  std::uint32_t id = 0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  Descriptor descriptor;
};

/// A feature seen by the downward camera, as a ground-plane offset from the
/// point under the camera in the body frame.
struct Observation {
  Eigen::Vector2d offset = Eigen::Vector2d::Zero();
  Descriptor descriptor;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct FeatureFrame {
  double timestamp = 0.0;
  double height = 0.0;
  std::vector<Observation> observations;

  friend bool operator==(const FeatureFrame&, const FeatureFrame&) = default;
};

struct KeyframeConfig {
  int max_motion_steps = 5;
  double max_drift = 0.05;
};

}  // namespace aerostate::mcl

#include <cmath>

#include "aerostate/core/camera.hpp"

namespace aerostate::mcl {

struct MclConfig {
  MotionNoise motion{0.002, 0.002, 0.002};
  MeasurementNoise measurement;
  KeyframeConfig keyframe;
  CameraFov fov;
  double match_ratio = 0.7;
  std::size_t min_matches = 2;
  /// Matches whose residual after the rigid fit exceeds this are dropped.
  double inlier_tolerance = 0.03;
  /// Match candidates lie within the camera footprint around a particle
  /// widened by this many measurement sigmas.
  double search_sigmas = 3.0;
  double floor_log_likelihood = std::log(1e-6);
  bool inject_measurement_noise = true;
};

}  // namespace aerostate::mcl
