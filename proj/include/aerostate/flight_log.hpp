#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <variant>
#include <vector>

#include "aerostate/core/pose.hpp"
#include "aerostate/core/quaternion.hpp"
#include "aerostate/mcl/types.hpp"

namespace aerostate {

/// Gravity-compensated body-frame acceleration plus the IMU's attitude.
struct ImuRecord {
  double t = 0.0;
  Eigen::Vector3d accel_body = Eigen::Vector3d::Zero();
  EulerAttitude attitude;

  friend bool operator==(const ImuRecord&, const ImuRecord&) = default;
};

/// Downward IR slant range.
struct RangeRecord {
  double t = 0.0;
  double range = 0.0;

  friend bool operator==(const RangeRecord&, const RangeRecord&) = default;
};

/// Camera frame and the odometry delta since the previous frame.
struct FrameRecord {
  double t = 0.0;
  mcl::FeatureFrame frame;
  mcl::MotionDelta delta;

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

struct TruthRecord {
  double t = 0.0;
  Pose2D pose;
  double height = 0.0;

  friend bool operator==(const TruthRecord&, const TruthRecord&) = default;
};

using LogRecord = std::variant<ImuRecord, RangeRecord, FrameRecord, TruthRecord>;

inline double record_time(const LogRecord& r) {
  return std::visit([](const auto& rec) { return rec.t; }, r);
}

/// Timestamp-ordered sensor and ground-truth stream.
struct FlightLog {
  std::vector<LogRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }

  bool is_time_ordered() const {
    return std::is_sorted(records.begin(), records.end(), [](const LogRecord& a, const LogRecord& b) {
      return record_time(a) < record_time(b);
    });
  }

  template <typename Record>
  std::vector<Record> select() const {
    std::vector<Record> out;
    for (const auto& r : records) {
      if (const auto* rec = std::get_if<Record>(&r)) out.push_back(*rec);
    }
    return out;
  }

  friend bool operator==(const FlightLog&, const FlightLog&) = default;
};

/// One row of an estimator pose trace.
struct TracePoint {
  double t = 0.0;
  Pose2D pose;
  std::size_t n_landmarks = 0;
  double log_weight = 0.0;
};

}  // namespace aerostate
