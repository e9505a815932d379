#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "aerostate/core/errors.hpp"
#include "aerostate/core/pose.hpp"

namespace aerostate::harness {

struct TimedPose {
  double t = 0.0;
  Pose2D pose;
};

struct PairedSample {
  double t = 0.0;
  Pose2D est;
  Pose2D truth;
};

struct Pairing {
  std::vector<PairedSample> samples;
  std::size_t dropped = 0;
};

inline constexpr double kDefaultPairTolerance = 1.0 / 240.0;

/// Pairs each estimate with the nearest truth sample (ties go to the earlier
/// one); estimates with no truth within `tol` are dropped and counted.
inline Pairing pair_by_timestamp(std::span<const TimedPose> est, std::span<const TimedPose> truth,
                                 double tol = kDefaultPairTolerance) {
  Pairing out;
  for (const auto& e : est) {
    const auto it = std::lower_bound(truth.begin(), truth.end(), e.t,
                                     [](const TimedPose& p, double t) { return p.t < t; });
    const TimedPose* best = nullptr;
    if (it != truth.begin()) best = &*std::prev(it);
    if (it != truth.end() && (best == nullptr || std::abs(it->t - e.t) < std::abs(best->t - e.t))) best = &*it;
    if (best != nullptr && std::abs(best->t - e.t) <= tol) {
      out.samples.push_back({e.t, e.pose, best->pose});
    } else {
      ++out.dropped;
    }
  }
  return out;
}

/// Planar Manhattan error; heading is not part of the metric.
inline double l1_error(const PairedSample& s) {
  return std::abs(s.est.x - s.truth.x) + std::abs(s.est.y - s.truth.y);
}

struct ErrorStats {
  double mean = 0.0;
  double std = 0.0;
  double max = 0.0;
  double min = 0.0;
  std::size_t n = 0;
};

/// Mean, sample (n-1) standard deviation, max and min.
inline ErrorStats error_stats(std::span<const double> errors) {
  if (errors.empty()) throw InvalidArgument("error_stats: no samples");
  ErrorStats s;
  s.n = errors.size();
  double sum = 0.0;
  s.max = errors.front();
  s.min = errors.front();
  for (const double e : errors) {
    sum += e;
    s.max = std::max(s.max, e);
    s.min = std::min(s.min, e);
  }
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (const double e : errors) ss += (e - s.mean) * (e - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  // Summation rounding can push the mean a hair outside [min, max].
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

inline ErrorStats error_stats(std::span<const PairedSample> samples) {
  std::vector<double> errors;
  errors.reserve(samples.size());
  for (const auto& s : samples) errors.push_back(l1_error(s));
  return error_stats(errors);
}

inline double rms(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("rms: no samples");
  double ss = 0.0;
  for (const double v : values) ss += v * v;
  return std::sqrt(ss / static_cast<double>(values.size()));
}

/// Shift in samples, within [-max_lag, max_lag], that maximizes the
/// cross-correlation between reference[begin, end) and the equally long
/// window of `signal` starting at begin + shift. Each window is mean-removed
/// and the windows never shrink, so the score is comparable across shifts.
/// Positive shifts mean `signal` trails `reference`. Shifts that would leave
/// `signal` are skipped.
inline int cross_correlation_lag(std::span<const double> reference, std::span<const double> signal,
                                 std::size_t begin, std::size_t end, int max_lag) {
  if (reference.size() != signal.size() || begin >= end || end > reference.size() || max_lag < 0) {
    throw InvalidArgument("cross_correlation_lag: invalid window");
  }
  const auto n = static_cast<std::ptrdiff_t>(signal.size());
  const auto b = static_cast<std::ptrdiff_t>(begin);
  const auto e = static_cast<std::ptrdiff_t>(end);
  const auto len = static_cast<double>(e - b);
  double mr = 0.0;
  for (auto i = b; i < e; ++i) mr += reference[i];
  mr /= len;
  int best_lag = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    if (b + lag < 0 || e + lag > n) continue;
    double ms = 0.0;
    for (auto i = b; i < e; ++i) ms += signal[i + lag];
    ms /= len;
    double c = 0.0;
    for (auto i = b; i < e; ++i) c += (reference[i] - mr) * (signal[i + lag] - ms);
    if (c > best) {
      best = c;
      best_lag = lag;
    }
  }
  return best_lag;
}

/// Index of the steepest change in `series`, measured as the difference
/// across +-half_width samples.
inline std::size_t steepest_change(std::span<const double> series, std::size_t half_width) {
  if (series.size() < 2 * half_width + 1) throw InvalidArgument("steepest_change: series too short");
  std::size_t best = half_width;
  double best_change = -1.0;
  for (std::size_t i = half_width; i + half_width < series.size(); ++i) {
    const double change = std::abs(series[i + half_width] - series[i - half_width]);
    if (change > best_change) {
      best_change = change;
      best = i;
    }
  }
  return best;
}

}  // namespace aerostate::harness
