#pragma once

#include "aerostate/core/errors.hpp"

namespace aerostate::ukf {

/// First-order exponential smoother: alpha * sample + (1 - alpha) * prev.
inline double ema_filter(double prev_smoothed, double sample, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("ema_filter: alpha must be in (0, 1]");
  return alpha * sample + (1.0 - alpha) * prev_smoothed;
}

/// Stateful EMA; the first sample initializes the output.
class Ema {
 public:
  explicit Ema(double alpha) : alpha_(alpha) { ema_filter(0.0, 0.0, alpha); }

  double push(double sample) {
    value_ = initialized_ ? ema_filter(value_, sample, alpha_) : sample;
    initialized_ = true;
    return value_;
  }
  double value() const { return value_; }

 private:
  double alpha_;
  double value_ = 0.0;
  bool initialized_ = false;
};

}  // namespace aerostate::ukf
