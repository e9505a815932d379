#pragma once

#include "aerostate/core/angles.hpp"
#include "aerostate/core/random.hpp"
#include "aerostate/mcl/types.hpp"

namespace aerostate::mcl {

/// Composes a body-frame delta onto a pose without noise.
inline Pose2D apply_delta(const Pose2D& pose, const MotionDelta& d) {
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  return {pose.x + d.dx * c - d.dy * s, pose.y + d.dx * s + d.dy * c,
          angle_wrap(pose.theta + d.dtheta)};
}

/// Odometry motion model: perturb the delta with zero-mean Gaussian noise,
/// then compose it onto the particle. The weight is carried through.
inline Particle sample_motion_model(const Particle& p, const MotionDelta& d, const MotionNoise& n,
                                    Rng& rng) {
  MotionDelta noisy = d;
  noisy.dx += sample_normal(rng, n.sigma_x);
  noisy.dy += sample_normal(rng, n.sigma_y);
  noisy.dtheta += sample_normal(rng, n.sigma_theta);
  return {apply_delta(p.pose, noisy), p.log_weight};
}

}  // namespace aerostate::mcl
