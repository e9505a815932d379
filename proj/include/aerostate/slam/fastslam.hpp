#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "aerostate/core/errors.hpp"
#include "aerostate/flight_log.hpp"
#include "aerostate/mcl/feature_map.hpp"
#include "aerostate/mcl/localizer.hpp"
#include "aerostate/slam/map_update.hpp"

namespace aerostate::slam {

struct SlamState {
  std::vector<SlamParticle> particles;
  mcl::KeyframeState keyframe;
  std::uint64_t step = 0;
  /// Particle that carried the highest weight at the last map update.
  std::size_t best_index = 0;
  /// Normalized log weight of that particle before resampling.
  double best_log_weight = 0.0;
};

inline SlamState init_slam_state(const Pose2D& start, std::size_t n, const SlamConfig& cfg) {
  if (n == 0) throw InvalidArgument("particle count must be at least 1");
  SlamState s;
  s.particles.resize(n);
  for (auto& p : s.particles) {
    p.pose = start;
    p.log_weight = -std::log(static_cast<double>(n));
  }
  s.keyframe = mcl::KeyframeState::initial(cfg.keyframe, start);
  return s;
}

/// FastSLAM step: shared motion model, keyframe-gated map update, then
/// systematic resampling (landmark lists copied by value) and uniform weights.
inline mcl::StepResult slam_step(SlamState& state, const mcl::MotionDelta& delta,
                                 const mcl::FeatureFrame* frame, const SlamConfig& cfg,
                                 std::uint64_t seed) {
  auto& particles = state.particles;
  if (particles.empty()) throw InvalidArgument("slam_step: particle count must be at least 1");
  const std::uint64_t step = state.step++;

  mcl::propagate_particles(particles, delta, cfg.motion, seed, step);
  ++state.keyframe.steps_since_update;

  mcl::StepResult result;
  result.estimate = mcl::estimate_pose(particles);
  const double drift = (result.estimate.position() - state.keyframe.pose_at_update.position()).norm();
  if (frame == nullptr || !(frame->height > 0.0) ||
      !mcl::keyframe_should_update(state.keyframe.steps_since_update, drift, cfg.keyframe)) {
    return result;
  }

  map_update(particles, *frame, cfg);
  result.measured = true;
  result.estimate = mcl::estimate_pose(particles);

  std::vector<double> log_w(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i) log_w[i] = particles[i].log_weight;
  const auto best = static_cast<std::size_t>(std::max_element(log_w.begin(), log_w.end()) - log_w.begin());
  state.best_log_weight = log_w[best] - log_sum_exp(log_w);
  Rng rng = make_stream(seed, step, 0, Stream::kResample);
  const auto idx = systematic_resample(log_w, particles.size(), rng);
  particles = gather_resampled(particles, idx);
  const double uniform = -std::log(static_cast<double>(particles.size()));
  for (auto& p : particles) p.log_weight = uniform;
  state.best_index = static_cast<std::size_t>(std::find(idx.begin(), idx.end(), best) - idx.begin());
  if (state.best_index >= particles.size()) state.best_index = 0;

  state.keyframe = {0, result.estimate};
  return result;
}

/// Map of one particle's landmarks. Bounds cover `nominal` (when given) and
/// every landmark.
inline mcl::FeatureMap export_map(const SlamParticle& particle,
                                  const std::optional<mcl::Bounds>& nominal = std::nullopt) {
  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  if (nominal) {
    min_x = nominal->origin_x;
    min_y = nominal->origin_y;
    max_x = nominal->origin_x + nominal->width;
    max_y = nominal->origin_y + nominal->height;
  }
  std::vector<mcl::MapFeature> features;
  features.reserve(particle.landmarks.size());
  for (std::size_t i = 0; i < particle.landmarks.size(); ++i) {
    const auto& lm = particle.landmarks[i];
    features.push_back({static_cast<std::uint32_t>(i), lm.mean, lm.descriptor});
    min_x = std::min(min_x, lm.mean.x());
    min_y = std::min(min_y, lm.mean.y());
    max_x = std::max(max_x, lm.mean.x());
    max_y = std::max(max_y, lm.mean.y());
  }
  if (!std::isfinite(min_x)) {
    min_x = min_y = 0.0;
    max_x = max_y = 1.0;
  }
  // Padding keeps landmarks on the extreme edges inside after rounding.
  constexpr double kPad = 1e-6;
  min_x -= kPad;
  min_y -= kPad;
  max_x += kPad;
  max_y += kPad;
  mcl::Bounds bounds{std::max(max_x - min_x, 1e-3), std::max(max_y - min_y, 1e-3), min_x, min_y};
  return mcl::FeatureMap(bounds, std::move(features));
}

struct OfflineSlamResult {
  mcl::FeatureMap map;
  std::vector<TracePoint> trace;
  SlamState final_state;
};

/// Replays a recorded log through slam_step in timestamp order and exports
/// the best particle's map. Particles start at the first ground-truth pose,
/// which anchors the map frame to the world frame.
inline OfflineSlamResult offline_slam(const FlightLog& log, const SlamConfig& cfg,
                                      std::size_t n_particles, std::uint64_t seed,
                                      const std::optional<mcl::Bounds>& nominal_bounds = std::nullopt) {
  if (log.empty()) throw InvalidArgument("offline_slam: empty log");
  validate(cfg);

  std::vector<const LogRecord*> ordered;
  ordered.reserve(log.size());
  for (const auto& r : log.records) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const LogRecord* a, const LogRecord* b) { return record_time(*a) < record_time(*b); });

  Pose2D start;
  for (const auto* r : ordered) {
    if (const auto* truth = std::get_if<TruthRecord>(r)) {
      start = truth->pose;
      break;
    }
  }

  OfflineSlamResult out;
  SlamState state = init_slam_state(start, n_particles, cfg);
  bool any_frame = false;
  for (const auto* r : ordered) {
    const auto* rec = std::get_if<FrameRecord>(r);
    if (rec == nullptr) continue;
    any_frame = true;
    const mcl::StepResult res = slam_step(state, rec->delta, &rec->frame, cfg, seed);
    if (!res.measured) continue;
    const SlamParticle& best = state.particles[state.best_index];
    out.trace.push_back({rec->t, res.estimate, best.landmarks.size(), state.best_log_weight});
  }
  if (!any_frame) throw InvalidArgument("offline_slam: log contains no frames");

  out.map = export_map(state.particles[state.best_index], nominal_bounds);
  out.final_state = std::move(state);
  return out;
}

}  // namespace aerostate::slam
