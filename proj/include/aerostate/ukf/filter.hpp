#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <array>
#include <optional>
#include <vector>

#include "aerostate/core/errors.hpp"
#include "aerostate/core/gaussian.hpp"
#include "aerostate/core/sigma_points.hpp"
#include "aerostate/ukf/models.hpp"

namespace aerostate::ukf {

/// Q is a noise rate: predict adds Q * dt. R is per measurement.
struct UkfConfig {
  Eigen::MatrixXd process_noise;
  Eigen::MatrixXd measurement_noise;
  SigmaParams sigma;
};

/// 2D filter defaults. R comes from the rangefinder's noise; Q from the IMU
/// noise integrated over one nominal loop period.
inline UkfConfig default_ukf2_config(double range_sigma = 0.02, double accel_sigma = 0.1,
                                     double nominal_dt = 1.0 / 30.0) {
  UkfConfig cfg;
  const double qv = accel_sigma * accel_sigma * nominal_dt;
  cfg.process_noise = Eigen::Vector2d(0.25 * qv * nominal_dt * nominal_dt + 1e-6, qv).asDiagonal();
  cfg.measurement_noise = Eigen::MatrixXd::Constant(1, 1, range_sigma * range_sigma);
  return cfg;
}

struct Ukf7Noise {
  double range_sigma = 0.02;
  double position_sigma = 0.05;
  double velocity_sigma = 0.05;
  double yaw_sigma = 0.02;
  double accel_sigma = 0.1;
  /// The model holds yaw constant; turns enter as this yaw-rate noise.
  double yaw_rate_sigma = 0.5;
  double nominal_dt = 1.0 / 30.0;
};

inline UkfConfig default_ukf7_config(const Ukf7Noise& n = {}) {
  UkfConfig cfg;
  const double qv = n.accel_sigma * n.accel_sigma * n.nominal_dt;
  const double qp = 0.25 * qv * n.nominal_dt * n.nominal_dt + 1e-6;
  Eigen::VectorXd q(7);
  q << qp, qp, qp, qv, qv, qv, n.yaw_rate_sigma * n.yaw_rate_sigma * n.nominal_dt;
  cfg.process_noise = q.asDiagonal();
  Eigen::VectorXd r(6);
  r << n.range_sigma, n.position_sigma, n.position_sigma, n.velocity_sigma, n.velocity_sigma,
      n.yaw_sigma;
  cfg.measurement_noise = r.array().square().matrix().asDiagonal();
  return cfg;
}

namespace detail {

inline void require_dim(const GaussianVec& est, Eigen::Index n) {
  if (est.dim() != n || est.cov.rows() != n || est.cov.cols() != n) {
    throw InvalidArgument("estimate dimension does not match the filter model");
  }
}

template <typename Transition>
GaussianVec predict(const GaussianVec& est, Transition&& f, double dt, const UkfConfig& cfg,
                    std::span<const Eigen::Index> angular_state) {
  require_positive_dt(dt);
  if (cfg.process_noise.rows() != est.dim() || cfg.process_noise.cols() != est.dim()) {
    throw InvalidArgument("ukf_predict: process noise dimension mismatch");
  }
  const SigmaPointSet prior = sigma_points(est, cfg.sigma);
  const SigmaPointSet moved = transform_points(prior, f);
  GaussianVec out = unscented_transform(moved, cfg.process_noise * dt, angular_state);
  for (Eigen::Index row : angular_state) out.mean(row) = angle_wrap(out.mean(row));
  return out;
}

/// Measurement update. `z` and `noise` are already restricted to the fused
/// rows; h maps a state to those rows only.
template <typename Measure>
GaussianVec update(const GaussianVec& est, const Eigen::VectorXd& z, const Eigen::MatrixXd& noise,
                   Measure&& h, const UkfConfig& cfg, std::span<const Eigen::Index> angular_meas,
                   std::span<const Eigen::Index> angular_state) {
  const SigmaPointSet points = sigma_points(est, cfg.sigma);
  const SigmaPointSet projected = transform_points(points, h);

  const Eigen::VectorXd z_hat = sigma_mean(projected, angular_meas);
  const Eigen::MatrixXd dz = sigma_residuals(projected, z_hat, angular_meas);
  const Eigen::MatrixXd dx = sigma_residuals(points, est.mean, angular_state);

  Eigen::MatrixXd innovation_cov = dz * projected.cov_weights.asDiagonal() * dz.transpose() + noise;
  innovation_cov = 0.5 * (innovation_cov + innovation_cov.transpose());
  const Eigen::MatrixXd cross_cov = dx * points.cov_weights.asDiagonal() * dz.transpose();

  Eigen::LLT<Eigen::MatrixXd> llt(innovation_cov);
  if (llt.info() != Eigen::Success) {
    throw NumericalDegeneracy("ukf_update: innovation covariance is singular");
  }
  // K = Pxz S^-1, computed as (S^-1 Pxz^T)^T.
  const Eigen::MatrixXd gain = llt.solve(cross_cov.transpose()).transpose();

  Eigen::VectorXd innovation = z - z_hat;
  for (Eigen::Index row : angular_meas) innovation(row) = angle_wrap(innovation(row));

  GaussianVec out;
  out.mean = est.mean + gain * innovation;
  for (Eigen::Index row : angular_state) out.mean(row) = angle_wrap(out.mean(row));
  out.cov = est.cov - gain * innovation_cov * gain.transpose();
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  return out;
}

}  // namespace detail

inline GaussianVec ukf_predict(const GaussianVec& est, const Control2& u, double dt,
                               const UkfConfig& cfg) {
  detail::require_dim(est, 2);
  auto f = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return g2(State2::from(x), u, dt).vec();
  };
  return detail::predict(est, f, dt, cfg, {});
}

/// Each sigma point rotates the body acceleration with its own yaw.
inline GaussianVec ukf_predict(const GaussianVec& est, const Control7Body& u,
                               const EulerAttitude& attitude, double dt, const UkfConfig& cfg) {
  detail::require_dim(est, 7);
  auto f = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const State7 s = State7::from(x);
    return g7(s, control_body_to_global(u, attitude, s.yaw), dt).vec();
  };
  static constexpr std::array<Eigen::Index, 1> kAngular{kYawIndex};
  return detail::predict(est, f, dt, cfg, kAngular);
}

inline GaussianVec ukf_update(const GaussianVec& est, const Measurement2& z, const UkfConfig& cfg) {
  detail::require_dim(est, 2);
  if (cfg.measurement_noise.rows() != 1 || cfg.measurement_noise.cols() != 1) {
    throw InvalidArgument("ukf_update: 2D filter expects a 1x1 measurement noise");
  }
  auto h = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return Eigen::VectorXd::Constant(1, h2(State2::from(x)).r);
  };
  return detail::update(est, Eigen::VectorXd::Constant(1, z.r), cfg.measurement_noise, h, cfg, {},
                        {});
}

/// Fuses whichever components of z are present by selecting the matching
/// rows of h7 and R.
inline GaussianVec ukf_update(const GaussianVec& est, const Measurement7& z,
                              const EulerAttitude& attitude, const UkfConfig& cfg) {
  detail::require_dim(est, 7);
  if (cfg.measurement_noise.rows() != Measurement7::kSize ||
      cfg.measurement_noise.cols() != Measurement7::kSize) {
    throw InvalidArgument("ukf_update: 7D filter expects a 6x6 measurement noise");
  }
  std::vector<Eigen::Index> rows;
  for (int i = 0; i < Measurement7::kSize; ++i) {
    if (z.component(i)) rows.push_back(i);
  }
  if (rows.empty()) return est;

  const auto m = static_cast<Eigen::Index>(rows.size());
  Eigen::VectorXd zv(m);
  Eigen::MatrixXd noise(m, m);
  std::vector<Eigen::Index> angular_meas;
  for (Eigen::Index a = 0; a < m; ++a) {
    zv(a) = *z.component(static_cast<int>(rows[a]));
    if (rows[a] == Measurement7::kSize - 1) angular_meas.push_back(a);
    for (Eigen::Index b = 0; b < m; ++b) noise(a, b) = cfg.measurement_noise(rows[a], rows[b]);
  }
  auto h = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const auto full = h7(State7::from(x), attitude);
    Eigen::VectorXd out(m);
    for (Eigen::Index a = 0; a < m; ++a) out(a) = full(rows[a]);
    return out;
  };
  static constexpr std::array<Eigen::Index, 1> kAngular{kYawIndex};
  return detail::update(est, zv, noise, h, cfg, angular_meas, kAngular);
}

/// Estimate plus the timestamp of the last prediction. Single owner.
template <typename Control>
class TimedFilter {
 public:
  TimedFilter(GaussianVec initial, UkfConfig cfg) : est_(std::move(initial)), cfg_(std::move(cfg)) {}

  const GaussianVec& estimate() const { return est_; }
  const UkfConfig& config() const { return cfg_; }
  std::optional<double> last_time() const { return last_t_; }

 protected:
  /// Returns the step since the previous call, or nullopt for the first call
  /// and for non-advancing timestamps.
  std::optional<double> advance(double t) {
    std::optional<double> dt;
    if (last_t_ && t > *last_t_) dt = t - *last_t_;
    if (!last_t_ || t > *last_t_) last_t_ = t;
    return dt;
  }

  GaussianVec est_;
  UkfConfig cfg_;
  std::optional<double> last_t_;
};

class Ukf2Filter : public TimedFilter<Control2> {
 public:
  using TimedFilter::TimedFilter;

  void predict(double t, const Control2& u) {
    if (auto dt = advance(t)) est_ = ukf_predict(est_, u, *dt, cfg_);
  }
  void update(const Measurement2& z) { est_ = ukf_update(est_, z, cfg_); }
  State2 state() const { return State2::from(est_.mean); }
};

class Ukf7Filter : public TimedFilter<Control7Body> {
 public:
  using TimedFilter::TimedFilter;

  void predict(double t, const Control7Body& u, const EulerAttitude& attitude) {
    if (auto dt = advance(t)) est_ = ukf_predict(est_, u, attitude, *dt, cfg_);
  }
  void update(const Measurement7& z, const EulerAttitude& attitude) {
    est_ = ukf_update(est_, z, attitude, cfg_);
  }
  State7 state() const { return State7::from(est_.mean); }
};

}  // namespace aerostate::ukf
