#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "aerostate/core/angles.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/core/pose.hpp"
#include "aerostate/core/quaternion.hpp"
#include "aerostate/mcl/feature_map.hpp"

namespace aerostate::sim {

struct Waypoint {
  Pose2D pose;
  double height = 0.5;
  /// Seconds spent stationary after arriving here.
  double hold = 0.0;
};

/// Sinusoidal roll/pitch oscillation.
struct AttitudeModel {
  double amplitude = deg_to_rad(5.0);
  double frequency = 0.4;
};

/// Small sinusoidal deviations layered on the waypoint path, mimicking a
/// hand-held camera.
struct Wobble {
  double xy_amplitude = 0.0;
  double height_amplitude = 0.0;
  double yaw_amplitude = 0.0;
  double frequency = 0.5;
};

struct TrajectorySpec {
  std::vector<Waypoint> waypoints;
  double speed = 0.15;
  /// Upper bound on the yaw rate used to size each leg, rad/s.
  double yaw_rate = 0.6;
  AttitudeModel attitude;
  Wobble wobble;
  /// Return to the first waypoint and repeat; otherwise stay at the last one.
  bool loop = true;
};

/// Smooth reference path through the waypoints.
struct ReferenceState {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  double yaw = 0.0;
};

namespace detail {

struct Leg {
  Eigen::Vector3d from;
  Eigen::Vector3d to;
  double yaw_from = 0.0;
  double yaw_delta = 0.0;
  double move = 0.0;
  double hold = 0.0;
};

// Minimum-jerk blend 10t^3 - 15t^4 + 6t^5 and its derivative.
inline double blend(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
inline double blend_rate(double u) { return 30.0 * u * u * (1.0 - u) * (1.0 - u); }

}  // namespace detail

class ReferencePath {
 public:
  explicit ReferencePath(TrajectorySpec spec) : spec_(std::move(spec)) {
    if (spec_.waypoints.empty()) throw InvalidArgument("trajectory needs at least one waypoint");
    if (!(spec_.speed > 0.0) || !(spec_.yaw_rate > 0.0)) {
      throw InvalidArgument("trajectory speed and yaw rate must be positive");
    }
    for (const auto& w : spec_.waypoints) {
      if (!(w.height > 0.0)) throw InvalidArgument("waypoint heights must be positive");
      if (w.hold < 0.0) throw InvalidArgument("waypoint hold must be non-negative");
    }
    const std::size_t n = spec_.waypoints.size();
    const std::size_t legs = spec_.loop ? n : n - 1;
    double yaw = spec_.waypoints.front().pose.theta;
    for (std::size_t i = 0; i < legs; ++i) {
      const Waypoint& a = spec_.waypoints[i];
      const Waypoint& b = spec_.waypoints[(i + 1) % n];
      detail::Leg leg;
      leg.from = {a.pose.x, a.pose.y, a.height};
      leg.to = {b.pose.x, b.pose.y, b.height};
      leg.yaw_from = yaw;
      leg.yaw_delta = angle_wrap(b.pose.theta - a.pose.theta);
      yaw += leg.yaw_delta;
      // Peak minimum-jerk speed is 1.875x the average.
      const double dist = (leg.to - leg.from).norm();
      leg.move = std::max({dist / spec_.speed, 1.875 * std::abs(leg.yaw_delta) / spec_.yaw_rate, 0.0});
      if (leg.move > 0.0) leg.move = std::max(leg.move, 0.5);
      leg.hold = a.hold;
      legs_.push_back(leg);
      cycle_ += leg.hold + leg.move;
    }
  }

  const TrajectorySpec& spec() const { return spec_; }

  ReferenceState operator()(double t) const {
    ReferenceState s = base(t);
    const Wobble& w = spec_.wobble;
    if (w.xy_amplitude != 0.0 || w.height_amplitude != 0.0 || w.yaw_amplitude != 0.0) {
      const double om = 2.0 * std::numbers::pi * w.frequency;
      const double fx = om, fy = 0.77 * om, fz = 1.31 * om, fpsi = 0.61 * om;
      s.position.x() += w.xy_amplitude * std::sin(fx * t + 0.3);
      s.velocity.x() += w.xy_amplitude * fx * std::cos(fx * t + 0.3);
      s.position.y() += w.xy_amplitude * std::sin(fy * t + 1.1);
      s.velocity.y() += w.xy_amplitude * fy * std::cos(fy * t + 1.1);
      s.position.z() += w.height_amplitude * std::sin(fz * t + 2.3);
      s.velocity.z() += w.height_amplitude * fz * std::cos(fz * t + 2.3);
      s.yaw += w.yaw_amplitude * std::sin(fpsi * t + 2.0);
    }
    return s;
  }

  EulerAttitude attitude(double t, double yaw) const {
    const double om = 2.0 * std::numbers::pi * spec_.attitude.frequency;
    return {spec_.attitude.amplitude * std::sin(om * t),
            spec_.attitude.amplitude * std::sin(0.8 * om * t + 0.7), angle_wrap(yaw)};
  }

 private:
  ReferenceState base(double t) const {
    ReferenceState s;
    const Waypoint& first = spec_.waypoints.front();
    if (legs_.empty() || cycle_ <= 0.0) {
      s.position = {first.pose.x, first.pose.y, first.height};
      s.yaw = first.pose.theta;
      return s;
    }
    double local = std::max(t, 0.0);
    if (spec_.loop) {
      local = std::fmod(local, cycle_);
    } else if (local >= cycle_) {
      const Waypoint& last = spec_.waypoints.back();
      s.position = {last.pose.x, last.pose.y, last.height};
      s.yaw = legs_.back().yaw_from + legs_.back().yaw_delta;
      return s;
    }
    for (const auto& leg : legs_) {
      if (local < leg.hold) {
        s.position = leg.from;
        s.yaw = leg.yaw_from;
        return s;
      }
      local -= leg.hold;
      if (local < leg.move) {
        const double u = local / leg.move;
        s.position = leg.from + (leg.to - leg.from) * detail::blend(u);
        s.velocity = (leg.to - leg.from) * (detail::blend_rate(u) / leg.move);
        s.yaw = leg.yaw_from + leg.yaw_delta * detail::blend(u);
        return s;
      }
      local -= leg.move;
    }
    const auto& leg = legs_.back();
    s.position = leg.to;
    s.yaw = leg.yaw_from + leg.yaw_delta;
    return s;
  }

  TrajectorySpec spec_;
  std::vector<detail::Leg> legs_;
  double cycle_ = 0.0;
};

/// Ground-truth kinematic state.
struct KinematicState {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d acceleration = Eigen::Vector3d::Zero();
  EulerAttitude attitude;

  Pose2D pose() const { return {position.x(), position.y(), attitude.yaw}; }
};

/// Truth produced by holding acceleration constant over each tick and
/// integrating exactly, with each tick's acceleration chosen so the velocity
/// lands on the reference velocity at the next tick. Position, velocity and
/// acceleration are therefore mutually consistent at every time.
class TruthTrajectory {
 public:
  TruthTrajectory(const TrajectorySpec& spec, const mcl::Bounds& bounds, double duration, double rate)
      : path_(spec), dt_(1.0 / rate) {
    if (!(rate > 0.0)) throw InvalidArgument("truth rate must be positive");
    if (!(duration >= 0.0)) throw InvalidArgument("duration must be non-negative");
    for (const auto& w : spec.waypoints) {
      if (!bounds.contains({w.pose.x, w.pose.y})) {
        throw InvalidArgument("trajectory waypoint lies outside the world bounds");
      }
    }
    const auto ticks = static_cast<std::size_t>(std::ceil(duration * rate)) + 1;
    position_.reserve(ticks + 1);
    velocity_.reserve(ticks + 1);
    accel_.reserve(ticks + 1);
    const ReferenceState start = path_(0.0);
    Eigen::Vector3d p = start.position;
    Eigen::Vector3d v = start.velocity;
    for (std::size_t k = 0; k <= ticks; ++k) {
      if (!bounds.contains(p.head<2>())) {
        throw InvalidArgument("trajectory exits the world bounds at t=" + std::to_string(k * dt_));
      }
      if (!(p.z() > 0.0)) throw InvalidArgument("trajectory height must stay positive");
      const Eigen::Vector3d a = (path_(static_cast<double>(k + 1) * dt_).velocity - v) / dt_;
      position_.push_back(p);
      velocity_.push_back(v);
      accel_.push_back(a);
      p = p + v * dt_ + 0.5 * a * dt_ * dt_;
      v = v + a * dt_;
    }
  }

  double tick() const { return dt_; }
  std::size_t tick_count() const { return position_.size(); }

  KinematicState at(double t) const {
    const double scaled = std::max(t, 0.0) / dt_;
    auto k = static_cast<std::size_t>(std::floor(scaled));
    k = std::min(k, position_.size() - 1);
    const double tau = std::max(t, 0.0) - static_cast<double>(k) * dt_;
    KinematicState s;
    s.acceleration = accel_[k];
    s.velocity = velocity_[k] + accel_[k] * tau;
    s.position = position_[k] + velocity_[k] * tau + 0.5 * accel_[k] * tau * tau;
    s.attitude = path_.attitude(t, path_(t).yaw);
    return s;
  }

  /// State exactly at tick k.
  KinematicState at_tick(std::size_t k) const {
    KinematicState s;
    s.position = position_.at(k);
    s.velocity = velocity_.at(k);
    s.acceleration = accel_.at(k);
    const double t = static_cast<double>(k) * dt_;
    s.attitude = path_.attitude(t, path_(t).yaw);
    return s;
  }

  const ReferencePath& path() const { return path_; }

 private:
  ReferencePath path_;
  double dt_;
  std::vector<Eigen::Vector3d> position_;
  std::vector<Eigen::Vector3d> velocity_;
  std::vector<Eigen::Vector3d> accel_;
};

/// Closed square centered in the bounds, turning 90 degrees along each side.
inline TrajectorySpec square_trajectory(const mcl::Bounds& bounds, double side = 1.0, double height = 0.45,
                                        double speed = 0.15) {
  const double cx = bounds.origin_x + 0.5 * bounds.width;
  const double cy = bounds.origin_y + 0.5 * bounds.height;
  const double h = 0.5 * side;
  const double half_pi = 0.5 * std::numbers::pi;
  TrajectorySpec spec;
  spec.speed = speed;
  spec.waypoints = {{{cx - h, cy - h, 0.0}, height, 0.0},
                    {{cx + h, cy - h, half_pi}, height, 0.0},
                    {{cx + h, cy + h, std::numbers::pi}, height, 0.0},
                    {{cx - h, cy + h, -half_pi}, height, 0.0}};
  return spec;
}

/// Back-and-forth rows covering the bounds, with hand-held wobble.
inline TrajectorySpec hand_held_trajectory(const mcl::Bounds& bounds, double height = 0.5, double margin = 0.22,
                                           std::size_t rows = 5, double speed = 0.12) {
  if (rows < 2) throw InvalidArgument("hand_held_trajectory needs at least two rows");
  const double x0 = bounds.origin_x + margin;
  const double x1 = bounds.origin_x + bounds.width - margin;
  const double y0 = bounds.origin_y + margin;
  const double y1 = bounds.origin_y + bounds.height - margin;
  TrajectorySpec spec;
  spec.speed = speed;
  spec.wobble = {0.015, 0.02, 0.12, 0.35};
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = y0 + (y1 - y0) * static_cast<double>(r) / static_cast<double>(rows - 1);
    const bool forward = r % 2 == 0;
    spec.waypoints.push_back({{forward ? x0 : x1, y, 0.0}, height, 0.0});
    spec.waypoints.push_back({{forward ? x1 : x0, y, 0.0}, height, 0.0});
  }
  return spec;
}

/// Stationary hover at the center of the bounds.
inline TrajectorySpec hover_trajectory(const mcl::Bounds& bounds, double height = 0.5) {
  TrajectorySpec spec;
  spec.waypoints = {{{bounds.origin_x + 0.5 * bounds.width, bounds.origin_y + 0.5 * bounds.height, 0.0}, height, 0.0}};
  spec.loop = false;
  return spec;
}

/// Hover, then a vertical step of `step` meters at `step_time`, then hover.
inline TrajectorySpec hover_step_trajectory(const mcl::Bounds& bounds, double height = 0.5, double step = 0.3,
                                            double step_time = 30.0, double climb_speed = 0.3) {
  TrajectorySpec spec = hover_trajectory(bounds, height);
  spec.waypoints.front().hold = step_time;
  Waypoint top = spec.waypoints.front();
  top.height = height + step;
  top.hold = 0.0;
  spec.waypoints.push_back(top);
  spec.speed = climb_speed;
  return spec;
}

}  // namespace aerostate::sim
