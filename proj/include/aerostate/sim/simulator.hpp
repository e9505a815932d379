#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "aerostate/core/camera.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/core/quaternion.hpp"
#include "aerostate/core/random.hpp"
#include "aerostate/flight_log.hpp"
#include "aerostate/mcl/types.hpp"
#include "aerostate/sim/trajectory.hpp"
#include "aerostate/sim/world.hpp"

namespace aerostate::sim {

struct SensorSpec {
  double imu_rate = 30.0;
  /// Set to zero to fly without the camera.
  double cam_rate = 30.0;
  double range_rate = 30.0;
  double truth_rate = 120.0;
  double imu_accel_noise = 0.1;
  double ir_noise = 0.02;
  /// Position noise of each observed feature on the image plane, meters.
  double cam_offset_noise = 0.003;
  CameraFov cam_fov;
  std::size_t features_per_frame = 200;
  double descriptor_bit_flip_prob = 0.05;
  mcl::MotionNoise delta_noise{0.001, 0.001, 0.001};
};

inline void validate(const SensorSpec& s) {
  if (!(s.imu_rate > 0.0) || !(s.range_rate > 0.0) || !(s.truth_rate > 0.0) || !(s.cam_rate >= 0.0)) {
    throw InvalidArgument("SensorSpec: rates must be positive");
  }
  if (!(s.descriptor_bit_flip_prob >= 0.0 && s.descriptor_bit_flip_prob < 1.0)) {
    throw InvalidArgument("SensorSpec: descriptor_bit_flip_prob must lie in [0, 1)");
  }
  if (s.imu_accel_noise < 0.0 || s.ir_noise < 0.0 || s.cam_offset_noise < 0.0 || s.delta_noise.sigma_x < 0.0 ||
      s.delta_noise.sigma_y < 0.0 || s.delta_noise.sigma_theta < 0.0) {
    throw InvalidArgument("SensorSpec: noise levels must be non-negative");
  }
}

/// Sensors with every noise source switched off.
inline SensorSpec noiseless(SensorSpec s) {
  s.imu_accel_noise = 0.0;
  s.ir_noise = 0.0;
  s.cam_offset_noise = 0.0;
  s.descriptor_bit_flip_prob = 0.0;
  s.delta_noise = {};
  return s;
}

inline mcl::MotionDelta compute_frame_delta(const Pose2D& prev, const Pose2D& cur, const mcl::MotionNoise& noise,
                                            Rng& rng) {
  const Eigen::Vector2d d = world_to_body(prev, cur.position());
  mcl::MotionDelta out{d.x(), d.y(), angle_wrap(cur.theta - prev.theta)};
  out.dx += sample_normal(rng, noise.sigma_x);
  out.dy += sample_normal(rng, noise.sigma_y);
  out.dtheta += sample_normal(rng, noise.sigma_theta);
  return out;
}

/// Flips each of the 256 bits independently with probability p.
inline Descriptor flip_bits(Descriptor d, double p, Rng& rng) {
  if (p <= 0.0) return d;
  std::geometric_distribution<int> gap(p);
  for (int bit = gap(rng); bit < static_cast<int>(Descriptor::kBits); bit += 1 + gap(rng)) d.flip(static_cast<std::size_t>(bit));
  return d;
}

/// Ground slant distance seen by the downward IR sensor.
inline double slant_range(double height, const EulerAttitude& att) {
  return height / (std::cos(att.roll) * std::cos(att.pitch));
}

/// World features inside the camera footprint, strongest first, capped.
inline std::vector<std::size_t> visible_features(const World& world, const Pose2D& pose, double height,
                                                 const SensorSpec& sensors) {
  const double range = get_perceptual_range(height, sensors.cam_fov);
  std::vector<std::size_t> idx;
  world.index.for_each_within(pose.position(), range,
                              [&](std::uint32_t slot) { idx.push_back(world.index.feature_index(slot)); });
  const auto stronger = [&](std::size_t a, std::size_t b) {
    return world.response[a] != world.response[b] ? world.response[a] > world.response[b] : a < b;
  };
  if (idx.size() > sensors.features_per_frame) {
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(sensors.features_per_frame), idx.end(),
                     stronger);
    idx.resize(sensors.features_per_frame);
  }
  std::sort(idx.begin(), idx.end(), stronger);
  return idx;
}

namespace detail {

enum class EventKind { kTruth = 0, kImu = 1, kRange = 2, kFrame = 3 };

struct Event {
  double t;
  EventKind kind;
};

inline void add_events(std::vector<Event>& events, double rate, double duration, EventKind kind) {
  if (rate <= 0.0) return;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) / rate;
    if (t > duration) break;
    events.push_back({t, kind});
  }
}

}  // namespace detail

/// Generates a flight log. Records at equal timestamps are ordered truth,
/// IMU, range, frame. All randomness comes from one sensor stream consumed
/// in record order, so logs are bit-identical per seed.
inline FlightLog simulate_flight(const World& world, const TrajectorySpec& traj, const SensorSpec& sensors,
                                 double duration, std::uint64_t seed) {
  validate(sensors);
  const TruthTrajectory truth(traj, world.bounds, duration, sensors.truth_rate);

  std::vector<detail::Event> events;
  detail::add_events(events, sensors.truth_rate, duration, detail::EventKind::kTruth);
  detail::add_events(events, sensors.imu_rate, duration, detail::EventKind::kImu);
  detail::add_events(events, sensors.range_rate, duration, detail::EventKind::kRange);
  detail::add_events(events, sensors.cam_rate, duration, detail::EventKind::kFrame);
  std::stable_sort(events.begin(), events.end(), [](const detail::Event& a, const detail::Event& b) {
    return a.t != b.t ? a.t < b.t : static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });

  Rng rng = make_stream(seed, 0, 0, Stream::kSensor);
  FlightLog log;
  log.records.reserve(events.size());
  bool have_prev_frame = false;
  Pose2D prev_frame_pose;

  for (const auto& ev : events) {
    const KinematicState s = truth.at(ev.t);
    switch (ev.kind) {
      case detail::EventKind::kTruth:
        log.records.emplace_back(TruthRecord{ev.t, s.pose(), s.position.z()});
        break;
      case detail::EventKind::kImu: {
        const Quaternion q = quat_from_euler(s.attitude);
        Eigen::Vector3d a = quat_rotate(q.conjugate(), s.acceleration);
        for (int i = 0; i < 3; ++i) a[i] += sample_normal(rng, sensors.imu_accel_noise);
        log.records.emplace_back(ImuRecord{ev.t, a, s.attitude});
        break;
      }
      case detail::EventKind::kRange: {
        const double r = slant_range(s.position.z(), s.attitude) + sample_normal(rng, sensors.ir_noise);
        log.records.emplace_back(RangeRecord{ev.t, std::max(r, 0.0)});
        break;
      }
      case detail::EventKind::kFrame: {
        const Pose2D pose = s.pose();
        FrameRecord rec;
        rec.t = ev.t;
        rec.frame.timestamp = ev.t;
        rec.frame.height =
            std::max(slant_range(s.position.z(), s.attitude) + sample_normal(rng, sensors.ir_noise), 1e-3);
        for (const std::size_t i : visible_features(world, pose, s.position.z(), sensors)) {
          mcl::Observation obs;
          obs.offset = world_to_body(pose, world.features[i].position);
          obs.offset.x() += sample_normal(rng, sensors.cam_offset_noise);
          obs.offset.y() += sample_normal(rng, sensors.cam_offset_noise);
          obs.descriptor = flip_bits(world.features[i].descriptor, sensors.descriptor_bit_flip_prob, rng);
          rec.frame.observations.push_back(obs);
        }
        if (have_prev_frame) rec.delta = compute_frame_delta(prev_frame_pose, pose, sensors.delta_noise, rng);
        prev_frame_pose = pose;
        have_prev_frame = true;
        log.records.emplace_back(std::move(rec));
        break;
      }
    }
  }
  return log;
}

}  // namespace aerostate::sim
