#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "aerostate/core/descriptor.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/core/pose.hpp"
#include "aerostate/mcl/types.hpp"

namespace aerostate::slam {

/// Per-particle, per-landmark 2D position filter.
struct LandmarkEKF {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();
  Descriptor descriptor;
  int counter = 0;
  bool matched = false;

  friend bool operator==(const LandmarkEKF&, const LandmarkEKF&) = default;
};

/// New landmark at the observed world position; the body-frame observation
/// covariance is rotated into the world frame.
inline LandmarkEKF init_landmark_ekf(const Pose2D& pose, const mcl::Observation& obs,
                                     const Eigen::Matrix2d& meas_cov) {
  const Eigen::Matrix2d r = rotation2d(pose.theta);
  LandmarkEKF lm;
  lm.mean = pose.position() + r * obs.offset;
  lm.cov = r * meas_cov * r.transpose();
  lm.descriptor = obs.descriptor;
  lm.counter = 0;
  return lm;
}

/// EKF correction with measurement model z = R(theta)^T (m - p). The model is
/// linear in the landmark, so H = R(theta)^T exactly. Joseph form keeps the
/// covariance symmetric PSD.
inline LandmarkEKF update_landmark_ekf(const Pose2D& pose, const mcl::Observation& obs,
                                       const LandmarkEKF& lm, const Eigen::Matrix2d& meas_cov) {
  const Eigen::Matrix2d h = rotation2d(pose.theta).transpose();
  const Eigen::Vector2d predicted = h * (lm.mean - pose.position());
  const Eigen::Matrix2d innovation_cov = h * lm.cov * h.transpose() + meas_cov;
  Eigen::LLT<Eigen::Matrix2d> llt(innovation_cov);
  if (llt.info() != Eigen::Success) {
    throw NumericalDegeneracy("update_landmark_ekf: innovation covariance is singular");
  }
  const Eigen::Matrix2d gain = llt.solve(h * lm.cov).transpose();
  const Eigen::Matrix2d i_kh = Eigen::Matrix2d::Identity() - gain * h;

  LandmarkEKF out = lm;
  out.mean = lm.mean + gain * (obs.offset - predicted);
  out.cov = i_kh * lm.cov * i_kh.transpose() + gain * meas_cov * gain.transpose();
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  return out;
}

}  // namespace aerostate::slam
