#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "aerostate/core/camera.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/core/matching.hpp"
#include "aerostate/core/parallel.hpp"
#include "aerostate/mcl/types.hpp"
#include "aerostate/slam/landmark_ekf.hpp"

namespace aerostate::slam {

struct SlamParticle {
  Pose2D pose;
  double log_weight = 0.0;
  std::vector<LandmarkEKF> landmarks;
};

struct SlamConfig {
  /// log(threshold) is added to a particle's weight for each new landmark.
  double new_landmark_threshold = 0.3;
  double match_ratio = 0.7;
  /// Weight gain per unit of Hamming margin (dist2 - dist1) on a match.
  double importance_scale = 0.05;
  CameraFov fov;
  /// Body-frame covariance of a feature's ground-plane offset.
  Eigen::Matrix2d observation_cov = Eigen::Matrix2d::Identity() * (0.005 * 0.005);
  mcl::MotionNoise motion{0.001, 0.001, 0.001};
  mcl::KeyframeConfig keyframe;
};

inline void validate(const SlamConfig& cfg) {
  if (!(cfg.new_landmark_threshold > 0.0 && cfg.new_landmark_threshold < 1.0)) {
    throw InvalidArgument("SlamConfig: new_landmark_threshold must lie strictly inside (0, 1)");
  }
  if (!(cfg.importance_scale > 0.0)) throw InvalidArgument("SlamConfig: importance_scale must be positive");
}

/// Two nearest landmarks to `descriptor` among `candidates` (indices into
/// `landmarks`). Returned indices refer to positions in `candidates`.
inline BestTwo best_2_matches(const Descriptor& descriptor, std::span<const LandmarkEKF> landmarks,
                              std::span<const std::size_t> candidates) {
  return best_two_matches(descriptor, candidates.size(), [&](std::size_t i) -> const Descriptor& {
    return landmarks[candidates[i]].descriptor;
  });
}

/// Map update for a single particle against one frame, given the perceptual
/// range for that frame's height. Only landmarks within `range` of the
/// particle are candidates, get counters adjusted, or can be removed.
inline void map_update_particle(SlamParticle& p, const mcl::FeatureFrame& frame, double range,
                                const SlamConfig& cfg) {
  std::vector<std::size_t> in_range;
  const double range2 = range * range;
  for (std::size_t i = 0; i < p.landmarks.size(); ++i) {
    if ((p.landmarks[i].mean - p.pose.position()).squaredNorm() <= range2) in_range.push_back(i);
  }

  const double new_landmark_log_weight = std::log(cfg.new_landmark_threshold);
  std::vector<LandmarkEKF> created;
  for (const auto& obs : frame.observations) {
    const BestTwo best = best_2_matches(obs.descriptor, p.landmarks, in_range);
    if (!best.passes_ratio(cfg.match_ratio)) {
      LandmarkEKF lm = init_landmark_ekf(p.pose, obs, cfg.observation_cov);
      lm.matched = true;
      created.push_back(std::move(lm));
      p.log_weight += new_landmark_log_weight;
    } else {
      LandmarkEKF& lm = p.landmarks[in_range[best.index1]];
      lm = update_landmark_ekf(p.pose, obs, lm, cfg.observation_cov);
      lm.matched = true;
      p.log_weight += cfg.importance_scale * static_cast<double>(best.dist2 - best.dist1);
    }
  }

  bool any_removed = false;
  for (std::size_t i : in_range) {
    LandmarkEKF& lm = p.landmarks[i];
    lm.counter += lm.matched ? 1 : -1;
    lm.matched = false;
    any_removed = any_removed || lm.counter < 0;
  }
  if (any_removed) {
    std::erase_if(p.landmarks, [](const LandmarkEKF& lm) { return lm.counter < 0; });
  }
  for (auto& lm : created) {
    lm.counter += 1;
    lm.matched = false;
    p.landmarks.push_back(std::move(lm));
  }
}

/// Associates the frame's features with every particle's landmarks, creating,
/// refining and pruning landmarks and accumulating log weights.
inline void map_update(std::vector<SlamParticle>& particles, const mcl::FeatureFrame& frame,
                       const SlamConfig& cfg) {
  validate(cfg);
  const double range = get_perceptual_range(frame.height, cfg.fov);
  parallel_for(particles.size(), [&](std::size_t i) { map_update_particle(particles[i], frame, range, cfg); });
}

}  // namespace aerostate::slam
