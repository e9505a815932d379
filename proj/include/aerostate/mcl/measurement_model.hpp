#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "aerostate/core/errors.hpp"
#include "aerostate/core/gaussian.hpp"
#include "aerostate/core/matching.hpp"
#include "aerostate/core/random.hpp"
#include "aerostate/mcl/feature_map.hpp"
#include "aerostate/mcl/types.hpp"

namespace aerostate::mcl {

struct LocationFix {
  Pose2D pose;
  std::size_t matches = 0;
};

/// Least-squares rigid transform (rotation + translation, no scale) taking
/// body-frame points onto their world-frame correspondences. Needs >= 2 pairs.
inline Pose2D fit_rigid_transform(std::span<const Eigen::Vector2d> local,
                                  std::span<const Eigen::Vector2d> world) {
  if (local.size() != world.size() || local.size() < 2) {
    throw InvalidArgument("fit_rigid_transform: need at least two correspondences");
  }
  Eigen::Vector2d local_mean = Eigen::Vector2d::Zero();
  Eigen::Vector2d world_mean = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < local.size(); ++i) {
    local_mean += local[i];
    world_mean += world[i];
  }
  local_mean /= static_cast<double>(local.size());
  world_mean /= static_cast<double>(world.size());

  double dot = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < local.size(); ++i) {
    const Eigen::Vector2d a = local[i] - local_mean;
    const Eigen::Vector2d b = world[i] - world_mean;
    dot += a.dot(b);
    cross += a.x() * b.y() - a.y() * b.x();
  }
  const double theta = std::atan2(cross, dot);
  const Eigen::Vector2d t = world_mean - rotation2d(theta) * local_mean;
  return {t.x(), t.y(), angle_wrap(theta)};
}

/// Matches the frame against map features within `search_radius` of `near`
/// and fits the camera pose. Returns nullopt with fewer than
/// cfg.min_matches inliers.
inline std::optional<LocationFix> try_compute_location(const FeatureFrame& frame,
                                                       const FeatureMap& map, const Pose2D& near,
                                                       double search_radius, const MclConfig& cfg,
                                                       std::size_t* matches_found = nullptr) {
  std::vector<std::uint32_t> candidates;
  std::vector<Descriptor> descriptors;
  map.for_each_within(near.position(), search_radius, [&](std::uint32_t slot) {
    candidates.push_back(slot);
    descriptors.push_back(map.sorted_descriptor(slot));
  });

  std::vector<Eigen::Vector2d> local;
  std::vector<Eigen::Vector2d> world;
  for (const auto& obs : frame.observations) {
    const BestTwo best = best_two_matches(obs.descriptor, descriptors.size(),
                                          [&](std::size_t i) -> const Descriptor& { return descriptors[i]; });
    if (!best.passes_ratio(cfg.match_ratio)) continue;
    local.push_back(obs.offset);
    world.push_back(map.sorted_position(candidates[best.index1]));
  }
  const std::size_t required = std::max<std::size_t>(2, cfg.min_matches);
  if (matches_found) *matches_found = local.size();
  if (local.size() < required) return std::nullopt;

  Pose2D pose = fit_rigid_transform(local, world);
  for (int iter = 0; iter < 3; ++iter) {
    std::vector<Eigen::Vector2d> kept_local;
    std::vector<Eigen::Vector2d> kept_world;
    for (std::size_t i = 0; i < local.size(); ++i) {
      if ((body_to_world(pose, local[i]) - world[i]).norm() <= cfg.inlier_tolerance) {
        kept_local.push_back(local[i]);
        kept_world.push_back(world[i]);
      }
    }
    if (matches_found) *matches_found = kept_local.size();
    if (kept_local.size() < required) return std::nullopt;
    if (kept_local.size() == local.size()) break;
    local = std::move(kept_local);
    world = std::move(kept_world);
    pose = fit_rigid_transform(local, world);
  }
  return LocationFix{pose, local.size()};
}

inline LocationFix compute_location(const FeatureFrame& frame, const FeatureMap& map,
                                    const Pose2D& near, double search_radius,
                                    const MclConfig& cfg = {}) {
  if (frame.observations.empty()) throw InvalidArgument("compute_location: empty frame");
  std::size_t found = 0;
  if (auto fix = try_compute_location(frame, map, near, search_radius, cfg, &found)) return *fix;
  throw InsufficientMatches(found, std::max<std::size_t>(2, cfg.min_matches));
}

/// Camera footprint plus position uncertainty (search_sigmas * sigma_x).
inline double location_search_radius(const FeatureFrame& frame, const MclConfig& cfg) {
  return get_perceptual_range(frame.height, cfg.fov) + cfg.search_sigmas * cfg.measurement.sigma_x;
}

/// Log-likelihood of the particle pose given the frame: locate the camera
/// from matched features, perturb that location with measurement noise, then
/// score x, y and heading residuals with independent Gaussians. Frames that
/// cannot be located score the configured floor.
inline double measurement_model(const Particle& p, const FeatureFrame& frame, const FeatureMap& map,
                                const MclConfig& cfg, Rng& rng) {
  if (frame.observations.empty() || !(frame.height > 0.0)) return cfg.floor_log_likelihood;
  const auto fix = try_compute_location(frame, map, p.pose, location_search_radius(frame, cfg), cfg);
  if (!fix) return cfg.floor_log_likelihood;

  Pose2D measured = fix->pose;
  const MeasurementNoise& mn = cfg.measurement;
  if (cfg.inject_measurement_noise) {
    measured.x += sample_normal(rng, mn.sigma_x);
    measured.y += sample_normal(rng, mn.sigma_y);
    measured.theta = angle_wrap(measured.theta + sample_normal(rng, mn.sigma_theta));
  }
  return log_gaussian_prob(measured.x - p.pose.x, mn.sigma_x) +
         log_gaussian_prob(measured.y - p.pose.y, mn.sigma_y) +
         log_gaussian_prob(angle_wrap(measured.theta - p.pose.theta), mn.sigma_theta);
}

}  // namespace aerostate::mcl
