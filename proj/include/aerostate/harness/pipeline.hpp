#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "aerostate/core/errors.hpp"
#include "aerostate/core/quaternion.hpp"
#include "aerostate/core/random.hpp"
#include "aerostate/flight_log.hpp"
#include "aerostate/harness/evaluation.hpp"
#include "aerostate/harness/log_io.hpp"
#include "aerostate/harness/map_io.hpp"
#include "aerostate/harness/trace_io.hpp"
#include "aerostate/mcl/localizer.hpp"
#include "aerostate/sim/simulator.hpp"
#include "aerostate/slam/fastslam.hpp"
#include "aerostate/ukf/ema.hpp"
#include "aerostate/ukf/filter.hpp"

namespace aerostate::harness {

enum class Mode { kUkf2, kUkf7, kMcl, kSlamOffline, kMclOverSlamMap };

inline std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::kUkf2: return "ukf2";
    case Mode::kUkf7: return "ukf7";
    case Mode::kMcl: return "mcl";
    case Mode::kSlamOffline: return "slam-offline";
    case Mode::kMclOverSlamMap: return "mcl-over-slam-map";
  }
  return "unknown";
}

inline Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::kUkf2, Mode::kUkf7, Mode::kMcl, Mode::kSlamOffline, Mode::kMclOverSlamMap}) {
    if (mode_name(m) == name) return m;
  }
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

/// Desk-scale world: 1.67 m x 1.65 m at a density that yields ~19,200 features.
inline const mcl::Bounds kDeskBounds{1.67, 1.65, 0.0, 0.0};
inline constexpr double kDeskDensity = 6968.0;

/// Sensor defaults per mode. Localization flies the 25 Hz camera used on
/// board (keyframes at 5 Hz); mapping uses the 30 Hz hand-held stream.
inline sim::SensorSpec default_sensors(Mode m) {
  sim::SensorSpec s;
  switch (m) {
    case Mode::kUkf2:
      s.cam_rate = 0.0;
      break;
    case Mode::kMcl:
      s.cam_rate = 25.0;
      s.features_per_frame = 180;
      break;
    default:
      break;
  }
  return s;
}

inline const std::vector<std::string>& trajectory_names() {
  static const std::vector<std::string> names{"square", "hand-held", "hover", "hover-step"};
  return names;
}

inline sim::TrajectorySpec make_trajectory(std::string_view name, const mcl::Bounds& bounds, double duration) {
  if (name == "square") return sim::square_trajectory(bounds);
  if (name == "hand-held") return sim::hand_held_trajectory(bounds);
  if (name == "hover") return sim::hover_trajectory(bounds);
  if (name == "hover-step") return sim::hover_step_trajectory(bounds, 0.5, 0.3, 0.5 * duration);
  throw ConfigError("unknown trajectory '" + std::string(name) + "'");
}

inline std::string default_trajectory(Mode m) {
  switch (m) {
    case Mode::kUkf2: return "hover-step";
    case Mode::kUkf7:
    case Mode::kMcl: return "square";
    default: return "hand-held";
  }
}

struct RunConfig {
  Mode mode = Mode::kMcl;
  std::uint64_t seed = 1;
  std::uint64_t world_seed = 7;
  double duration = 60.0;
  mcl::Bounds bounds = kDeskBounds;
  double world_density = kDeskDensity;
  /// Simulated sensors; per-mode defaults when unset.
  std::optional<sim::SensorSpec> sensors;
  /// Trajectory for the simulated log; per-mode default when unset.
  std::optional<std::string> trajectory;
  /// Trajectory and sensors of the second (localization) log in
  /// mcl-over-slam-map.
  std::string localization_trajectory = "square";
  std::optional<sim::SensorSpec> localization_sensors;
  std::size_t particles = 40;
  std::size_t localization_particles = 20;
  /// Spread of the initial particle cloud around the first ground-truth pose.
  double init_sigma_xy = 0.02;
  double init_sigma_theta = 0.02;
  double pair_tolerance = kDefaultPairTolerance;
  double ema_alpha = 0.2;
  mcl::MclConfig mcl;
  slam::SlamConfig slam;

  std::optional<std::string> log_path;
  /// Second log for mcl-over-slam-map.
  std::optional<std::string> localization_log_path;
  std::optional<std::string> map_path;
  std::optional<std::string> map_out_path;
  std::optional<std::string> trace_path;

  sim::SensorSpec sensor_spec() const { return sensors.value_or(default_sensors(mode)); }
  std::string trajectory_name() const { return trajectory.value_or(default_trajectory(mode)); }
};

inline void validate(const RunConfig& cfg) {
  if (cfg.particles < 1 || cfg.localization_particles < 1) throw ConfigError("particle counts must be at least 1");
  if (!(cfg.duration > 0.0)) throw ConfigError("duration must be positive");
  if (!(cfg.pair_tolerance >= 0.0)) throw ConfigError("pairing tolerance must be non-negative");
  if (!(cfg.ema_alpha > 0.0 && cfg.ema_alpha <= 1.0)) throw ConfigError("ema alpha must lie in (0, 1]");
  if (!(cfg.world_density > 0.0)) throw ConfigError("world density must be positive");
  try {
    sim::validate(cfg.sensor_spec());
    slam::validate(cfg.slam);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

struct TimedValue {
  double t = 0.0;
  double value = 0.0;
};

struct EvalReport {
  Mode mode = Mode::kMcl;
  std::uint64_t seed = 0;
  ErrorStats stats;
  std::size_t dropped = 0;
  /// Mode-specific scalars, kept sorted by name.
  std::map<std::string, double> metrics;
  std::vector<TracePoint> trace;
  /// Altitude estimates (ukf modes).
  std::vector<TimedValue> altitude;
  std::optional<mcl::FeatureMap> map;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["mode"] = mode_name(mode);
    j["seed"] = seed;
    j["error"] = {{"mean", stats.mean}, {"std", stats.std}, {"max", stats.max}, {"min", stats.min}, {"n", stats.n}};
    j["dropped"] = dropped;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metrics) m[k] = v;
    j["metrics"] = std::move(m);
    return j;
  }

  std::string to_table() const {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << std::left << std::setw(20) << "Mode" << std::right << std::setw(10) << "Mean" << std::setw(10) << "Std"
        << std::setw(10) << "Maximum" << std::setw(10) << "Minimum" << std::setw(8) << "N" << '\n';
    out << std::left << std::setw(20) << mode_name(mode) << std::right << std::setw(10) << stats.mean
        << std::setw(10) << stats.std << std::setw(10) << stats.max << std::setw(10) << stats.min << std::setw(8)
        << stats.n << '\n';
    for (const auto& [k, v] : metrics) out << "  " << std::left << std::setw(24) << k << v << '\n';
    return out.str();
  }
};

namespace detail {

inline std::vector<const LogRecord*> time_ordered(const FlightLog& log) {
  std::vector<const LogRecord*> out;
  out.reserve(log.size());
  for (const auto& r : log.records) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(),
                   [](const LogRecord* a, const LogRecord* b) { return record_time(*a) < record_time(*b); });
  return out;
}

inline std::vector<TimedPose> truth_poses(const FlightLog& log) {
  std::vector<TimedPose> out;
  for (const auto* r : time_ordered(log)) {
    if (const auto* t = std::get_if<TruthRecord>(r)) out.push_back({t->t, t->pose});
  }
  return out;
}

inline Pose2D first_truth_pose(const FlightLog& log) {
  const auto truth = truth_poses(log);
  if (truth.empty()) throw InvalidArgument("log has no ground-truth records");
  return truth.front().pose;
}

/// Scalar series carried in the x coordinate so the planar pairing and L1
/// metric reduce to nearest-timestamp absolute error.
inline std::vector<TimedPose> as_poses(const std::vector<TimedValue>& v) {
  std::vector<TimedPose> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back({s.t, {s.value, 0.0, 0.0}});
  return out;
}

inline std::vector<double> paired_errors(const std::vector<TimedValue>& est, const std::vector<TimedValue>& truth,
                                         double tol, std::size_t* dropped = nullptr) {
  const auto e = as_poses(est);
  const auto t = as_poses(truth);
  const Pairing p = pair_by_timestamp(e, t, tol);
  if (dropped != nullptr) *dropped = p.dropped;
  std::vector<double> out;
  out.reserve(p.samples.size());
  for (const auto& s : p.samples) out.push_back(s.est.x - s.truth.x);
  return out;
}

inline void fill_planar_stats(EvalReport& report, const std::vector<TimedPose>& truth, double tol) {
  std::vector<TimedPose> est;
  est.reserve(report.trace.size());
  for (const auto& p : report.trace) est.push_back({p.t, p.pose});
  const Pairing pairing = pair_by_timestamp(est, truth, tol);
  report.dropped = pairing.dropped;
  if (pairing.samples.empty()) throw InvalidArgument("no estimate could be paired with ground truth");
  report.stats = error_stats(pairing.samples);
}

}  // namespace detail

/// Altitude filtering on IMU + IR: the 2D UKF against raw IR and an EMA.
inline EvalReport run_ukf2(const FlightLog& log, const RunConfig& cfg) {
  const sim::SensorSpec sensors = cfg.sensor_spec();
  const ukf::UkfConfig ucfg =
      ukf::default_ukf2_config(sensors.ir_noise, std::max(sensors.imu_accel_noise, 1e-3), 1.0 / sensors.imu_rate);

  std::optional<ukf::Ukf2Filter> filter;
  ukf::Ema ema(cfg.ema_alpha);
  ukf::Control2 last_u;
  std::vector<TimedValue> est, raw, smoothed, truth;
  for (const auto* r : detail::time_ordered(log)) {
    if (const auto* imu = std::get_if<ImuRecord>(r)) {
      if (filter) filter->predict(imu->t, last_u);
      last_u.z_ddot = quat_rotate(quat_from_euler(imu->attitude), imu->accel_body).z();
    } else if (const auto* range = std::get_if<RangeRecord>(r)) {
      if (!filter) {
        GaussianVec init{Eigen::Vector2d(range->range, 0.0),
                         Eigen::Vector2d(std::max(sensors.ir_noise, 1e-3) * std::max(sensors.ir_noise, 1e-3), 0.01)
                             .asDiagonal()};
        filter.emplace(init, ucfg);
        filter->predict(range->t, last_u);
      } else {
        filter->predict(range->t, last_u);
      }
      filter->update({range->range});
      est.push_back({range->t, filter->state().z});
      raw.push_back({range->t, range->range});
      smoothed.push_back({range->t, ema.push(range->range)});
    } else if (const auto* t = std::get_if<TruthRecord>(r)) {
      truth.push_back({t->t, t->height});
    }
  }
  if (est.empty()) throw InvalidArgument("ukf2: log has no range records");
  if (truth.empty()) throw InvalidArgument("ukf2: log has no ground-truth records");

  EvalReport report;
  report.mode = Mode::kUkf2;
  report.seed = cfg.seed;
  report.altitude = est;
  std::size_t dropped = 0;
  const auto ukf_err = detail::paired_errors(est, truth, cfg.pair_tolerance, &dropped);
  const auto raw_err = detail::paired_errors(raw, truth, cfg.pair_tolerance);
  const auto ema_err = detail::paired_errors(smoothed, truth, cfg.pair_tolerance);
  if (ukf_err.empty()) throw InvalidArgument("ukf2: no estimate could be paired with ground truth");
  std::vector<double> abs_err;
  for (double e : ukf_err) abs_err.push_back(std::abs(e));
  report.stats = error_stats(abs_err);
  report.dropped = dropped;
  report.metrics["ukf_rms"] = rms(ukf_err);
  report.metrics["raw_ir_rms"] = rms(raw_err);
  report.metrics["ema_rms"] = rms(ema_err);
  report.metrics["ukf_to_raw_rms_ratio"] = rms(ukf_err) / rms(raw_err);

  // Lags against the truth sampled at the range timestamps, over a window
  // around the largest altitude change (the commanded step).
  if (ukf_err.size() == est.size()) {
    std::vector<double> ref, u, e;
    for (std::size_t i = 0; i < est.size(); ++i) {
      ref.push_back(est[i].value - ukf_err[i]);
      u.push_back(est[i].value);
      e.push_back(smoothed[i].value);
    }
    const double period = est.size() > 1 ? (est.back().t - est.front().t) / static_cast<double>(est.size() - 1) : 0.0;
    const auto samples_per_second = static_cast<std::size_t>(std::lround(period > 0.0 ? 1.0 / period : 1.0));
    const std::size_t half = std::max<std::size_t>(1, samples_per_second / 2);
    const std::size_t window = 2 * samples_per_second;
    if (ref.size() > 2 * (window + half)) {
      const std::size_t center = std::clamp(steepest_change(ref, half), window, ref.size() - window);
      const int max_lag = static_cast<int>(samples_per_second);
      const std::size_t begin = center - window;
      const std::size_t end = center + window;
      report.metrics["ukf_lag_s"] = period * cross_correlation_lag(ref, u, begin, end, max_lag);
      report.metrics["ema_lag_s"] = period * cross_correlation_lag(ref, e, begin, end, max_lag);
    }
  }
  return report;
}

/// Full-state UKF: IMU prediction, IR slant range, and camera-odometry
/// velocity and heading.
inline EvalReport run_ukf7(const FlightLog& log, const RunConfig& cfg) {
  const sim::SensorSpec sensors = cfg.sensor_spec();
  ukf::Ukf7Noise noise;
  noise.range_sigma = std::max(sensors.ir_noise, 1e-3);
  noise.accel_sigma = std::max(sensors.imu_accel_noise, 1e-3);
  noise.nominal_dt = 1.0 / sensors.imu_rate;
  const ukf::UkfConfig ucfg = ukf::default_ukf7_config(noise);

  const auto ordered = detail::time_ordered(log);
  const Pose2D start = detail::first_truth_pose(log);
  double start_height = 0.5;
  for (const auto* r : ordered) {
    if (const auto* range = std::get_if<RangeRecord>(r)) {
      start_height = range->range;
      break;
    }
  }
  ukf::State7 s0{start.x, start.y, start_height, 0.0, 0.0, 0.0, start.theta};
  Eigen::VectorXd var(7);
  var << 1e-4, 1e-4, 4e-4, 1e-4, 1e-4, 1e-4, 1e-4;
  ukf::Ukf7Filter filter(GaussianVec{s0.vec(), var.asDiagonal()}, ucfg);

  ukf::Control7Body last_u;
  EulerAttitude last_att{0.0, 0.0, start.theta};
  std::optional<double> last_frame_t;
  double camera_yaw = start.theta;
  EvalReport report;
  report.mode = Mode::kUkf7;
  report.seed = cfg.seed;
  std::vector<TimedValue> truth_height;
  for (const auto* r : ordered) {
    if (const auto* imu = std::get_if<ImuRecord>(r)) {
      filter.predict(imu->t, last_u, last_att);
      last_u = ukf::Control7Body{imu->accel_body.x(), imu->accel_body.y(), imu->accel_body.z()};
      last_att = imu->attitude;
    } else if (const auto* range = std::get_if<RangeRecord>(r)) {
      filter.predict(range->t, last_u, last_att);
      ukf::Measurement7 z;
      z.r = range->range;
      filter.update(z, last_att);
      report.altitude.push_back({range->t, filter.state().z});
    } else if (const auto* frame = std::get_if<FrameRecord>(r)) {
      filter.predict(frame->t, last_u, last_att);
      if (last_frame_t && frame->t > *last_frame_t) {
        const double dt = frame->t - *last_frame_t;
        camera_yaw = angle_wrap(camera_yaw + frame->delta.dtheta);
        const Eigen::Vector2d v =
            rotation2d(filter.state().yaw) * Eigen::Vector2d(frame->delta.dx, frame->delta.dy) / dt;
        ukf::Measurement7 z;
        z.x_dot = v.x();
        z.y_dot = v.y();
        z.yaw = camera_yaw;
        filter.update(z, last_att);
      }
      last_frame_t = frame->t;
      const ukf::State7 s = filter.state();
      report.trace.push_back({frame->t, {s.x, s.y, s.yaw}, 0, 0.0});
    } else if (const auto* t = std::get_if<TruthRecord>(r)) {
      truth_height.push_back({t->t, t->height});
    }
  }
  if (report.trace.empty()) throw InvalidArgument("ukf7: log has no frames");
  detail::fill_planar_stats(report, detail::truth_poses(log), cfg.pair_tolerance);
  const auto alt_err = detail::paired_errors(report.altitude, truth_height, cfg.pair_tolerance);
  if (!alt_err.empty()) report.metrics["altitude_rms"] = rms(alt_err);
  return report;
}

/// Monte Carlo localization over a known map, started around the first
/// ground-truth pose.
inline EvalReport run_mcl(const FlightLog& log, const mcl::FeatureMap& map, const RunConfig& cfg,
                          std::size_t n_particles, std::uint64_t seed) {
  const Pose2D start = detail::first_truth_pose(log);
  auto particles = mcl::init_particles_gaussian(start, cfg.init_sigma_xy, cfg.init_sigma_theta, n_particles, seed);
  mcl::MonteCarloLocalizer localizer(map, cfg.mcl, std::move(particles), seed);

  EvalReport report;
  report.mode = Mode::kMcl;
  report.seed = seed;
  std::size_t measured = 0, reinitialized = 0;
  for (const auto* r : detail::time_ordered(log)) {
    const auto* frame = std::get_if<FrameRecord>(r);
    if (frame == nullptr) continue;
    const mcl::StepResult res = localizer.step(frame->delta, &frame->frame);
    measured += res.measured ? 1 : 0;
    reinitialized += res.reinitialized ? 1 : 0;
    report.trace.push_back({frame->t, res.estimate, map.size(), 0.0});
  }
  if (report.trace.empty()) throw InvalidArgument("mcl: log has no frames");
  detail::fill_planar_stats(report, detail::truth_poses(log), cfg.pair_tolerance);
  report.metrics["keyframes"] = static_cast<double>(measured);
  report.metrics["reinitializations"] = static_cast<double>(reinitialized);
  report.metrics["map_features"] = static_cast<double>(map.size());
  return report;
}

inline EvalReport run_slam(const FlightLog& log, const RunConfig& cfg) {
  const slam::OfflineSlamResult result = slam::offline_slam(log, cfg.slam, cfg.particles, cfg.seed, cfg.bounds);
  EvalReport report;
  report.mode = Mode::kSlamOffline;
  report.seed = cfg.seed;
  report.trace = result.trace;
  detail::fill_planar_stats(report, detail::truth_poses(log), cfg.pair_tolerance);
  report.metrics["landmarks"] = static_cast<double>(result.map.size());
  report.map = result.map;
  return report;
}

namespace detail {

inline FlightLog simulate(const RunConfig& cfg, const sim::World& world, const std::string& trajectory,
                          std::uint64_t seed) {
  const sim::SensorSpec sensors = cfg.sensor_spec();
  return sim::simulate_flight(world, make_trajectory(trajectory, cfg.bounds, cfg.duration), sensors, cfg.duration,
                              seed);
}

}  // namespace detail

/// Runs one mode end to end. Logs and maps come from the configured paths
/// when given, otherwise from the simulator (world from `world_seed`, sensor
/// noise from `seed`). The trace and exported map are written when paths are
/// set.
inline EvalReport run_pipeline(const RunConfig& cfg) {
  validate(cfg);
  std::optional<sim::World> world;
  const auto get_world = [&]() -> const sim::World& {
    if (!world) world = sim::generate_world(cfg.bounds, cfg.world_density, cfg.world_seed);
    return *world;
  };
  const auto primary_log = [&]() {
    return cfg.log_path ? read_log(*cfg.log_path) : detail::simulate(cfg, get_world(), cfg.trajectory_name(), cfg.seed);
  };

  EvalReport report;
  switch (cfg.mode) {
    case Mode::kUkf2:
      report = run_ukf2(primary_log(), cfg);
      break;
    case Mode::kUkf7:
      report = run_ukf7(primary_log(), cfg);
      break;
    case Mode::kMcl: {
      const FlightLog log = primary_log();
      const mcl::FeatureMap map = cfg.map_path ? read_map(*cfg.map_path) : get_world().index;
      report = run_mcl(log, map, cfg, cfg.particles, cfg.seed);
      break;
    }
    case Mode::kSlamOffline:
      report = run_slam(primary_log(), cfg);
      break;
    case Mode::kMclOverSlamMap: {
      const EvalReport mapping = run_slam(primary_log(), cfg);
      RunConfig loc = cfg;
      loc.sensors = cfg.localization_sensors.value_or(default_sensors(Mode::kMcl));
      const std::uint64_t loc_seed = splitmix64(cfg.seed);
      const FlightLog second = cfg.localization_log_path
                                   ? read_log(*cfg.localization_log_path)
                                   : detail::simulate(loc, get_world(), cfg.localization_trajectory, loc_seed);
      report = run_mcl(second, *mapping.map, cfg, cfg.localization_particles, cfg.seed);
      report.mode = Mode::kMclOverSlamMap;
      report.metrics["landmarks"] = mapping.metrics.at("landmarks");
      report.metrics["slam_mean_error"] = mapping.stats.mean;
      report.map = mapping.map;
      break;
    }
  }

  if (cfg.trace_path) {
    if (report.trace.empty()) {
      std::vector<TracePoint> alt;
      for (const auto& a : report.altitude) alt.push_back({a.t, {0.0, 0.0, 0.0}, 0, a.value});
      write_trace(*cfg.trace_path, alt);
    } else {
      write_trace(*cfg.trace_path, report.trace);
    }
  }
  if (cfg.map_out_path && report.map) write_map(*cfg.map_out_path, *report.map);
  return report;
}

}  // namespace aerostate::harness
