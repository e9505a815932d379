#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "aerostate/core/quaternion.hpp"
#include "aerostate/core/resample.hpp"
#include "aerostate/core/sigma_points.hpp"
#include "aerostate/harness/evaluation.hpp"
#include "aerostate/harness/log_io.hpp"
#include "aerostate/mcl/localizer.hpp"
#include "aerostate/sim/simulator.hpp"
#include "aerostate/sim/world.hpp"
#include "aerostate/slam/fastslam.hpp"
#include "aerostate/ukf/filter.hpp"
#include "support/generators.hpp"
#include "support/scenes.hpp"

namespace aerostate::testing {

/// Outcome of one randomized property run; keeps the first counterexample.
struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void check(bool ok, std::size_t case_index, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first_failure = "case " + std::to_string(case_index) + ": " + what;
  }
  bool passed() const { return failures == 0 && cases > 0; }
};

using PropertyFn = PropertyResult (*)(std::size_t cases, std::uint64_t seed);

struct NamedProperty {
  const char* module;
  const char* name;
  PropertyFn run;
};

inline constexpr double kPropPi = std::numbers::pi;

inline double min_eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

inline bool symmetric_psd(const Eigen::MatrixXd& m, double tol = 1e-8) {
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + m.cwiseAbs().maxCoeff()) &&
         min_eig(m) >= -tol;
}

// ---- estcore ---------------------------------------------------------------

/// Unit quaternions stay unit under construction and products, and rotation
/// preserves vector norms.
inline PropertyResult quaternion_norms(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"quaternion norms", 0, 0, {}};
  Gen gen(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const Quaternion a = quat_from_euler(gen.attitude());
    const Quaternion b = gen.unit_quaternion();
    const Eigen::Vector3d v = gen.vec3(10.0);
    r.check(std::abs(a.norm() - 1.0) <= 1e-12, i, "quat_from_euler is not unit");
    r.check(std::abs((a * b).norm() - 1.0) <= 1e-12, i, "product is not unit");
    r.check(std::abs(quat_rotate(b, v).norm() - v.norm()) <= 1e-9 * (1.0 + v.norm()), i, "rotation changed the norm");
  }
  return r;
}

/// Mean weights sum to one, and the identity unscented transform returns the
/// input Gaussian.
inline PropertyResult sigma_weight_sums(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"sigma-weight sums", 0, 0, {}};
  Gen gen(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const int n = gen.integer(1, 7);
    const SigmaParams params{gen.uniform(0.05, 1.0), gen.uniform(0.0, 3.0), gen.uniform(0.0, 2.0)};
    const GaussianVec g = gen.gaussian(n);
    const SigmaPointSet set = sigma_points(g, params);
    const double scale = set.mean_weights.cwiseAbs().maxCoeff();
    r.check(set.count() == 2 * n + 1, i, "wrong sigma point count");
    r.check(std::abs(set.mean_weights.sum() - 1.0) <= 1e-12 * scale, i, "mean weights do not sum to 1");
    r.check(std::abs(set.cov_weights.sum() - set.mean_weights.sum() - (1.0 - params.alpha * params.alpha + params.beta)) <=
                1e-12 * scale,
            i, "covariance weights do not carry the beta term");
    const GaussianVec back = unscented_transform(set, Eigen::MatrixXd());
    r.check(max_relative_error(back.mean, g.mean) <= 1e-9 * std::max(1.0, scale * 1e-2), i, "identity transform moved the mean");
    r.check((back.cov - g.cov).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, scale * 1e-2) * g.cov.cwiseAbs().maxCoeff(), i,
            "identity transform changed the covariance");
  }
  return r;
}

/// Systematic resampling keeps the particle count, stays within one copy of
/// the expected multiplicity N*w_i, and is reproducible.
inline PropertyResult resample_conservation(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"resample conservation", 0, 0, {}};
  Gen gen(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 60));
    std::vector<double> log_w(n);
    for (auto& w : log_w) w = gen.normal(3.0);
    const std::uint64_t s = gen.u64();
    Rng a(s), b(s);
    const auto idx = systematic_resample(log_w, n, a);
    r.check(idx.size() == n, i, "resampled count differs");
    r.check(idx == systematic_resample(log_w, n, b), i, "not reproducible");
    const auto w = normalized_weights(log_w);
    std::vector<std::size_t> count(n, 0);
    for (std::size_t k : idx) {
      if (k < n) ++count[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double expected = static_cast<double>(n) * w[k];
      r.check(std::abs(static_cast<double>(count[k]) - expected) < 1.0 + 1e-9, i, "multiplicity off by a full copy");
    }
  }
  return r;
}

inline PropertyResult angle_wrap_range(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"angle wrap range", 0, 0, {}};
  Gen gen(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const double a = gen.uniform(-100.0, 100.0);
    const double w = angle_wrap(a);
    r.check(w > -kPropPi && w <= kPropPi, i, "wrapped angle outside (-pi, pi]");
    r.check(std::abs(std::remainder(a - w, 2.0 * kPropPi)) <= 1e-9, i, "wrap changed the angle modulo 2pi");
  }
  return r;
}

// ---- ukf -------------------------------------------------------------------

/// Long random predict/update sequences keep symmetric PSD covariances with
/// wrapped yaw and slant range r >= z.
inline PropertyResult ukf_covariance_psd(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"ukf covariance PSD", 0, 0, {}};
  Gen gen(seed);
  const ukf::UkfConfig cfg2 = ukf::default_ukf2_config();
  const ukf::UkfConfig cfg7 = ukf::default_ukf7_config();
  GaussianVec e2{Eigen::Vector2d(0.5, 0.0), Eigen::Matrix2d::Identity() * 0.01};
  GaussianVec e7{Eigen::VectorXd::Zero(7), Eigen::MatrixXd::Identity(7, 7) * 0.01};
  e7.mean(2) = 0.5;
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const double dt = gen.uniform(0.005, 0.1);
    const EulerAttitude att{gen.normal(0.1), gen.normal(0.1), 0.0};
    e2 = ukf::ukf_predict(e2, {gen.normal(0.5)}, dt, cfg2);
    e7 = ukf::ukf_predict(e7, {gen.normal(0.5), gen.normal(0.5), gen.normal(0.5)}, att, dt, cfg7);
    r.check(symmetric_psd(e2.cov) && symmetric_psd(e7.cov), i, "predicted covariance not symmetric PSD");
    if (gen.integer(0, 1) == 1) {
      e2 = ukf::ukf_update(e2, {0.5 + gen.normal(0.02)}, cfg2);
      ukf::Measurement7 z;
      if (gen.integer(0, 1)) z.r = 0.5 + gen.normal(0.02);
      if (gen.integer(0, 1)) z.x = gen.normal(0.05);
      if (gen.integer(0, 1)) z.y = gen.normal(0.05);
      if (gen.integer(0, 1)) z.x_dot = gen.normal(0.05);
      if (gen.integer(0, 1)) z.y_dot = gen.normal(0.05);
      if (gen.integer(0, 1)) z.yaw = gen.uniform(-kPropPi, kPropPi);
      e7 = ukf::ukf_update(e7, z, att, cfg7);
      r.check(symmetric_psd(e2.cov) && symmetric_psd(e7.cov), i, "posterior covariance not symmetric PSD");
    }
    r.check(e7.mean(ukf::kYawIndex) > -kPropPi && e7.mean(ukf::kYawIndex) <= kPropPi, i, "yaw not wrapped");
    const EulerAttitude tilt = gen.attitude(1.5);
    const ukf::State7 s{0.0, 0.0, gen.uniform(0.0, 3.0), 0.0, 0.0, 0.0, 0.0};
    r.check(ukf::h7(s, tilt)(0) >= s.z, i, "slant range below altitude");
  }
  return r;
}

/// ukf_update posterior is unchanged by a 2*pi shift in the measured yaw.
inline PropertyResult ukf_yaw_shift_invariance(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"ukf yaw shift invariance", 0, 0, {}};
  Gen gen(seed);
  const ukf::UkfConfig cfg = ukf::default_ukf7_config();
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    GaussianVec prior{Eigen::VectorXd(7), gen.spd(7, 0.05)};
    for (int k = 0; k < 6; ++k) prior.mean(k) = gen.normal();
    prior.mean(6) = gen.uniform(-3.0, 3.0);
    ukf::Measurement7 a;
    a.yaw = gen.uniform(-3.0, 3.0);
    ukf::Measurement7 b = a;
    *b.yaw += 2.0 * kPropPi * (gen.integer(0, 1) ? 1.0 : -1.0);
    const GaussianVec pa = ukf::ukf_update(prior, a, {}, cfg);
    const GaussianVec pb = ukf::ukf_update(prior, b, {}, cfg);
    r.check((pa.mean - pb.mean).cwiseAbs().maxCoeff() <= 1e-9 && (pa.cov - pb.cov).cwiseAbs().maxCoeff() <= 1e-9, i,
            "2pi yaw shift changed the posterior");
  }
  return r;
}

// ---- mcl -------------------------------------------------------------------

/// mcl_step never changes the particle count, measurement_model never
/// returns -inf, and the estimate lies inside the particles' bounding box.
inline PropertyResult mcl_particle_conservation(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"mcl particle-count conservation", 0, 0, {}};
  Gen gen(seed);
  const Scene scene = random_scene(seed, 400, 1.0, 1.0);
  mcl::MclConfig cfg;
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 24));
    const Pose2D truth{gen.uniform(0.2, 0.8), gen.uniform(0.2, 0.8), gen.uniform(-3, 3)};
    mcl::MclState state;
    state.particles = mcl::init_particles_gaussian(truth, gen.uniform(0, 0.1), gen.uniform(0, 0.3), n, gen.u64());
    state.keyframe = mcl::KeyframeState::initial(cfg.keyframe, truth);
    mcl::FeatureFrame frame = exact_frame(scene, truth, 0.2, gen.uniform(0.2, 0.8));
    if (gen.integer(0, 3) == 0) frame.observations.clear();
    const bool with_frame = gen.integer(0, 4) != 0;
    const mcl::StepResult res = mcl::mcl_step(state, {gen.normal(0.01), gen.normal(0.01), gen.normal(0.05)},
                                              with_frame ? &frame : nullptr, scene.map, cfg, gen.u64());
    r.check(state.particles.size() == n, i, "particle count changed");
    double lo_x = 1e9, hi_x = -1e9, lo_y = 1e9, hi_y = -1e9;
    for (const auto& p : state.particles) {
      lo_x = std::min(lo_x, p.pose.x), hi_x = std::max(hi_x, p.pose.x);
      lo_y = std::min(lo_y, p.pose.y), hi_y = std::max(hi_y, p.pose.y);
    }
    if (!res.measured) {
      r.check(res.estimate.x >= lo_x - 1e-12 && res.estimate.x <= hi_x + 1e-12 && res.estimate.y >= lo_y - 1e-12 &&
                  res.estimate.y <= hi_y + 1e-12,
              i, "estimate outside the particle bounding box");
    }
    Rng rng(gen.u64());
    const double logq = mcl::measurement_model(state.particles.front(), frame, scene.map, cfg, rng);
    r.check(std::isfinite(logq), i, "measurement model returned a non-finite log likelihood");
  }
  return r;
}

/// Zero-noise motion model composes exactly with the simulator's frame delta.
inline PropertyResult motion_delta_round_trip(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"motion delta round trip", 0, 0, {}};
  Gen gen(seed);
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const Pose2D a{gen.uniform(-2, 2), gen.uniform(-2, 2), gen.uniform(-kPropPi, kPropPi)};
    const Pose2D b{gen.uniform(-2, 2), gen.uniform(-2, 2), gen.uniform(-kPropPi, kPropPi)};
    const Pose2D back = mcl::sample_motion_model({a, 0.0}, sim::compute_frame_delta(a, b, {}, rng), {}, rng).pose;
    r.check(std::abs(back.x - b.x) <= 1e-9 && std::abs(back.y - b.y) <= 1e-9 &&
                std::abs(angle_wrap(back.theta - b.theta)) <= 1e-9,
            i, "delta did not reproduce the target pose");
  }
  return r;
}

// ---- fastslam --------------------------------------------------------------

inline std::vector<slam::SlamParticle> random_slam_particles(Gen& gen, Rng& rng, std::size_t n) {
  std::vector<slam::SlamParticle> ps(n);
  for (auto& p : ps) {
    p.pose = {gen.uniform(0.3, 0.7), gen.uniform(0.3, 0.7), gen.uniform(-3, 3)};
    p.log_weight = gen.normal();
    const int m = gen.integer(0, 12);
    for (int k = 0; k < m; ++k) {
      slam::LandmarkEKF lm;
      lm.mean = {gen.uniform(0, 1), gen.uniform(0, 1)};
      lm.cov = gen.spd(2, 0.01);
      lm.descriptor = random_descriptor(rng);
      lm.counter = gen.integer(0, 3);
      p.landmarks.push_back(lm);
    }
  }
  return ps;
}

inline mcl::FeatureFrame random_slam_frame(Gen& gen, Rng& rng, const std::vector<slam::SlamParticle>& ps) {
  mcl::FeatureFrame frame;
  frame.height = gen.uniform(0.2, 0.8);
  const int k = gen.integer(0, 8);
  for (int j = 0; j < k; ++j) {
    mcl::Observation o{{gen.normal(0.1), gen.normal(0.1)}, random_descriptor(rng)};
    // Re-observe some existing landmark descriptors so matches happen.
    const auto& p = ps[static_cast<std::size_t>(gen.integer(0, static_cast<int>(ps.size()) - 1))];
    if (!p.landmarks.empty() && gen.integer(0, 1)) {
      o.descriptor = p.landmarks[static_cast<std::size_t>(gen.integer(0, static_cast<int>(p.landmarks.size()) - 1))].descriptor;
    }
    frame.observations.push_back(o);
  }
  return frame;
}

/// Each particle owns its map: permuting particle order permutes the results
/// bitwise, resampled copies share no storage, and landmarks outside the
/// perceptual range are never touched.
inline PropertyResult landmark_ownership_isolation(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"landmark ownership isolation", 0, 0, {}};
  Gen gen(seed);
  Rng rng(seed);
  const slam::SlamConfig cfg;
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 6));
    auto ps = random_slam_particles(gen, rng, n);
    const mcl::FeatureFrame frame = random_slam_frame(gen, rng, ps);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    std::vector<slam::SlamParticle> permuted;
    for (std::size_t k : perm) permuted.push_back(ps[k]);

    const double range = get_perceptual_range(frame.height, cfg.fov);
    std::vector<std::vector<slam::LandmarkEKF>> outside(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& lm : ps[k].landmarks) {
        if ((lm.mean - ps[k].pose.position()).norm() > range) outside[k].push_back(lm);
      }
    }

    slam::map_update(ps, frame, cfg);
    slam::map_update(permuted, frame, cfg);
    for (std::size_t k = 0; k < n; ++k) {
      r.check(permuted[k].landmarks == ps[perm[k]].landmarks && permuted[k].log_weight == ps[perm[k]].log_weight, i,
              "particle order changed a particle's map");
      std::size_t kept = 0;
      for (const auto& lm : ps[k].landmarks) {
        kept += static_cast<std::size_t>(std::count(outside[k].begin(), outside[k].end(), lm) > 0);
      }
      r.check(kept == outside[k].size(), i, "out-of-range landmark was modified or removed");
    }

    std::vector<std::size_t> idx(n);
    for (auto& v : idx) v = static_cast<std::size_t>(gen.integer(0, static_cast<int>(n) - 1));
    auto copy = ps;
    auto resampled = gather_resampled(copy, idx);
    std::vector<std::vector<slam::LandmarkEKF>> snapshot;
    for (const auto& p : resampled) snapshot.push_back(p.landmarks);
    for (auto& lm : resampled.front().landmarks) lm.mean.x() += 1.0;
    resampled.front().landmarks.emplace_back();
    for (std::size_t k = 1; k < n; ++k) {
      r.check(resampled[k].landmarks == snapshot[k], i, "mutating one resampled particle changed another");
    }
  }
  return r;
}

/// Landmark covariance trace never grows across EKF updates and stays PSD.
inline PropertyResult landmark_covariance_monotone(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"landmark covariance monotone", 0, 0, {}};
  Gen gen(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    slam::LandmarkEKF lm;
    lm.mean = {gen.uniform(0, 1), gen.uniform(0, 1)};
    lm.cov = gen.spd(2, 0.02);
    const Eigen::Matrix2d meas = gen.spd(2, 0.005);
    for (int k = 0; k < 5; ++k) {
      const Pose2D pose{gen.uniform(0, 1), gen.uniform(0, 1), gen.uniform(-3, 3)};
      const slam::LandmarkEKF next = slam::update_landmark_ekf(pose, {{gen.normal(0.1), gen.normal(0.1)}, {}}, lm, meas);
      r.check(next.cov.trace() <= lm.cov.trace() * (1.0 + 1e-12), i, "covariance trace grew");
      r.check(symmetric_psd(next.cov, 1e-15), i, "covariance not symmetric PSD");
      lm = next;
    }
  }
  return r;
}

// ---- sim -------------------------------------------------------------------

/// A feature appears in a frame iff it lies within the perceptual range of
/// the true height.
inline PropertyResult visibility_symmetry(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"perceptual-range visibility symmetry", 0, 0, {}};
  Gen gen(seed);
  const mcl::Bounds bounds{1.0, 1.0, 0.0, 0.0};
  const sim::World world = sim::generate_world(bounds, 2500, seed);
  sim::SensorSpec sensors;
  sensors.features_per_frame = world.features.size();
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const Pose2D pose{gen.uniform(0, 1), gen.uniform(0, 1), gen.uniform(-3, 3)};
    const double h = gen.uniform(0.05, 1.0);
    sensors.cam_fov = {gen.uniform(0.3, 2.0), gen.uniform(0.3, 2.0)};
    auto seen = sim::visible_features(world, pose, h, sensors);
    std::sort(seen.begin(), seen.end());
    const double range = get_perceptual_range(h, sensors.cam_fov);
    std::vector<std::size_t> expected;
    for (std::size_t k = 0; k < world.features.size(); ++k) {
      if ((world.features[k].position - pose.position()).norm() <= range) expected.push_back(k);
    }
    r.check(seen == expected, i, "visible set differs from the perceptual-range disc");
  }
  return r;
}

// ---- harness ---------------------------------------------------------------

inline LogRecord random_record(Gen& gen, Rng& rng) {
  const double t = gen.uniform(0, 1000);
  switch (gen.integer(0, 3)) {
    case 0:
      return ImuRecord{t, gen.vec3(5.0), {gen.normal(0.2), gen.normal(0.2), gen.uniform(-3, 3)}};
    case 1:
      return RangeRecord{t, gen.uniform(0, 3)};
    case 2: {
      FrameRecord f;
      f.t = t;
      f.frame.timestamp = t;
      f.frame.height = gen.uniform(0.1, 2);
      f.delta = {gen.normal(), gen.normal(), gen.normal()};
      const int k = gen.integer(0, 4);
      for (int j = 0; j < k; ++j) f.frame.observations.push_back({{gen.normal(), gen.normal()}, random_descriptor(rng)});
      return f;
    }
    default:
      return TruthRecord{t, {gen.normal(), gen.normal(), gen.uniform(-3, 3)}, gen.uniform(0.1, 2)};
  }
}

/// Every record survives a JSONL round trip bit-exactly.
inline PropertyResult log_round_trip(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"log round trip", 0, 0, {}};
  Gen gen(seed);
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    FlightLog log;
    log.records.push_back(random_record(gen, rng));
    std::stringstream s;
    harness::write_log(s, log);
    r.check(harness::read_log(s) == log, i, "record changed through write/read");
  }
  return r;
}

/// Pairing picks the nearest truth within tolerance (ties to the earlier),
/// and error statistics are ordered min <= mean <= max with std >= 0.
inline PropertyResult pairing_and_stats(std::size_t cases, std::uint64_t seed) {
  PropertyResult r{"pairing nearest-neighbor and stats ordering", 0, 0, {}};
  Gen gen(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    std::vector<harness::TimedPose> truth, est;
    double t = 0.0;
    const int nt = gen.integer(1, 20);
    for (int k = 0; k < nt; ++k) truth.push_back({t += gen.uniform(0.001, 0.05), {gen.normal(), gen.normal(), 0.0}});
    const int ne = gen.integer(1, 10);
    for (int k = 0; k < ne; ++k) est.push_back({gen.uniform(0, t + 0.05), {gen.normal(), gen.normal(), 0.0}});
    std::sort(est.begin(), est.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    const double tol = gen.uniform(0.0, 0.03);
    const harness::Pairing p = harness::pair_by_timestamp(est, truth, tol);
    r.check(p.samples.size() + p.dropped == est.size(), i, "samples plus dropped differ from estimates");
    for (const auto& s : p.samples) {
      double best = 1e9;
      const harness::TimedPose* nearest = nullptr;
      for (const auto& tp : truth) {
        const double d = std::abs(tp.t - s.t);
        if (d < best) best = d, nearest = &tp;
      }
      r.check(best <= tol && nearest != nullptr && nearest->pose == s.truth, i, "pair is not the nearest truth");
    }
    if (!p.samples.empty()) {
      const harness::ErrorStats st = harness::error_stats(p.samples);
      r.check(st.min <= st.mean && st.mean <= st.max && st.std >= 0.0 && st.n == p.samples.size(), i,
              "error stats out of order");
    }
  }
  return r;
}

inline const std::vector<NamedProperty>& all_properties() {
  static const std::vector<NamedProperty> props{
      {"estcore", "quaternion norms", quaternion_norms},
      {"estcore", "sigma-weight sums", sigma_weight_sums},
      {"estcore", "resample conservation", resample_conservation},
      {"estcore", "angle wrap range", angle_wrap_range},
      {"ukf", "covariance PSD", ukf_covariance_psd},
      {"ukf", "yaw shift invariance", ukf_yaw_shift_invariance},
      {"mcl", "particle-count conservation", mcl_particle_conservation},
      {"mcl", "motion delta round trip", motion_delta_round_trip},
      {"fastslam", "landmark ownership isolation", landmark_ownership_isolation},
      {"fastslam", "landmark covariance monotone", landmark_covariance_monotone},
      {"sim", "perceptual-range visibility symmetry", visibility_symmetry},
      {"harness", "log round trip", log_round_trip},
      {"harness", "pairing and stats", pairing_and_stats},
  };
  return props;
}

}  // namespace aerostate::testing
