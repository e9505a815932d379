#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "aerostate/core/errors.hpp"
#include "aerostate/core/parallel.hpp"
#include "aerostate/core/random.hpp"
#include "aerostate/core/resample.hpp"
#include "aerostate/mcl/feature_map.hpp"
#include "aerostate/mcl/measurement_model.hpp"
#include "aerostate/mcl/motion_model.hpp"

namespace aerostate::mcl {

inline bool keyframe_should_update(int steps_since_update, double drift_since_update,
                                   const KeyframeConfig& cfg) {
  return steps_since_update >= cfg.max_motion_steps || drift_since_update >= cfg.max_drift;
}

/// Weighted mean of x and y, weighted circular mean of heading.
template <typename P>
Pose2D estimate_pose(const std::vector<P>& particles) {
  std::vector<double> log_w(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i) log_w[i] = particles[i].log_weight;
  const std::vector<double> w = normalized_weights(log_w);
  Pose2D est;
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < particles.size(); ++i) {
    est.x += w[i] * particles[i].pose.x;
    est.y += w[i] * particles[i].pose.y;
    s += w[i] * std::sin(particles[i].pose.theta);
    c += w[i] * std::cos(particles[i].pose.theta);
  }
  est.theta = angle_wrap(std::atan2(s, c));
  return est;
}

/// Gate bookkeeping between measurement updates.
struct KeyframeState {
  int steps_since_update = 0;
  Pose2D pose_at_update;

  /// A fresh filter takes a measurement on its first frame.
  static KeyframeState initial(const KeyframeConfig& cfg, const Pose2D& start) {
    return {cfg.max_motion_steps, start};
  }
};

template <typename P>
struct FilterState {
  std::vector<P> particles;
  KeyframeState keyframe;
  std::uint64_t step = 0;
};

using MclState = FilterState<Particle>;

struct StepResult {
  Pose2D estimate;
  bool measured = false;
  bool reinitialized = false;
};

inline std::vector<Particle> init_particles_gaussian(const Pose2D& center, double sigma_xy,
                                                     double sigma_theta, std::size_t n,
                                                     std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("particle count must be at least 1");
  std::vector<Particle> out(n);
  Rng rng = make_stream(seed, 0, 0, Stream::kInit);
  for (auto& p : out) {
    p.pose = {center.x + sample_normal(rng, sigma_xy), center.y + sample_normal(rng, sigma_xy),
              angle_wrap(center.theta + sample_normal(rng, sigma_theta))};
    p.log_weight = -std::log(static_cast<double>(n));
  }
  return out;
}

inline std::vector<Particle> init_particles_uniform(const Bounds& bounds, std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidArgument("particle count must be at least 1");
  std::uniform_real_distribution<double> ux(bounds.origin_x, bounds.origin_x + bounds.width);
  std::uniform_real_distribution<double> uy(bounds.origin_y, bounds.origin_y + bounds.height);
  std::uniform_real_distribution<double> ut(-std::numbers::pi, std::numbers::pi);
  std::vector<Particle> out(n);
  for (auto& p : out) {
    p.pose.x = ux(rng);
    p.pose.y = uy(rng);
    p.pose.theta = angle_wrap(ut(rng));
    p.log_weight = -std::log(static_cast<double>(n));
  }
  return out;
}

/// Propagates every particle through the motion model. Particle i draws from
/// its own stream keyed by (seed, step, i), so results do not depend on the
/// worker count.
template <typename P>
void propagate_particles(std::vector<P>& particles, const MotionDelta& delta,
                         const MotionNoise& noise, std::uint64_t seed, std::uint64_t step) {
  parallel_for(particles.size(), [&](std::size_t i) {
    Rng rng = make_stream(seed, step, i, Stream::kMotion);
    const Particle moved = sample_motion_model({particles[i].pose, particles[i].log_weight}, delta, noise, rng);
    particles[i].pose = moved.pose;
  });
}

/// Systematic resampling back to the same count with uniform weights.
template <typename P>
void resample_particles(std::vector<P>& particles, std::uint64_t seed, std::uint64_t step) {
  std::vector<double> log_w(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i) log_w[i] = particles[i].log_weight;
  Rng rng = make_stream(seed, step, 0, Stream::kResample);
  const auto idx = systematic_resample(log_w, particles.size(), rng);
  particles = gather_resampled(particles, idx);
  const double uniform = -std::log(static_cast<double>(particles.size()));
  for (auto& p : particles) p.log_weight = uniform;
}

/// One localization step: motion update for every particle, then, if a frame
/// is present and the keyframe gate fires, measurement weighting and
/// resampling. Degenerate weights reinitialize the cloud uniformly over the
/// map and set `reinitialized`.
inline StepResult mcl_step(MclState& state, const MotionDelta& delta, const FeatureFrame* frame,
                           const FeatureMap& map, const MclConfig& cfg, std::uint64_t seed) {
  auto& particles = state.particles;
  if (particles.empty()) throw InvalidArgument("mcl_step: particle count must be at least 1");
  const std::uint64_t step = state.step++;

  propagate_particles(particles, delta, cfg.motion, seed, step);
  ++state.keyframe.steps_since_update;

  StepResult result;
  result.estimate = estimate_pose(particles);
  const double drift = (result.estimate.position() - state.keyframe.pose_at_update.position()).norm();
  if (frame == nullptr || !keyframe_should_update(state.keyframe.steps_since_update, drift, cfg.keyframe)) {
    return result;
  }

  parallel_for(particles.size(), [&](std::size_t i) {
    Rng rng = make_stream(seed, step, i, Stream::kMeasurement);
    particles[i].log_weight += measurement_model(particles[i], *frame, map, cfg, rng);
  });
  result.measured = true;
  try {
    result.estimate = estimate_pose(particles);
    resample_particles(particles, seed, step);
  } catch (const DegenerateWeights&) {
    Rng rng = make_stream(seed, step, 0, Stream::kInit);
    particles = init_particles_uniform(map.bounds(), particles.size(), rng);
    result.estimate = estimate_pose(particles);
    result.reinitialized = true;
  }
  state.keyframe = {0, result.estimate};
  return result;
}

/// Owns a particle cloud, its map and configuration.
class MonteCarloLocalizer {
 public:
  MonteCarloLocalizer(FeatureMap map, MclConfig cfg, std::vector<Particle> particles,
                      std::uint64_t seed)
      : map_(std::move(map)), cfg_(cfg), seed_(seed) {
    const Pose2D start = estimate_pose(particles);
    state_.particles = std::move(particles);
    state_.keyframe = KeyframeState::initial(cfg_.keyframe, start);
  }

  StepResult step(const MotionDelta& delta, const FeatureFrame* frame) {
    return mcl_step(state_, delta, frame, map_, cfg_, seed_);
  }

  const std::vector<Particle>& particles() const { return state_.particles; }
  const FeatureMap& map() const { return map_; }
  const MclConfig& config() const { return cfg_; }

 private:
  FeatureMap map_;
  MclConfig cfg_;
  std::uint64_t seed_;
  MclState state_;
};

}  // namespace aerostate::mcl
