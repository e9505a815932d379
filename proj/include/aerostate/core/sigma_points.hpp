#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <span>

#include "aerostate/core/angles.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/core/gaussian.hpp"

namespace aerostate {

/// Scaled sigma-point parameters (Van der Merwe).
struct SigmaParams {
  double alpha = 0.1;
  double beta = 2.0;
  double kappa = 0.0;
};

/// 2n+1 sigma points stored column-wise, with their mean and covariance
/// weights. After a nonlinear map the columns hold the transformed points and
/// the weights are carried along unchanged.
struct SigmaPointSet {
  Eigen::MatrixXd points;
  Eigen::VectorXd mean_weights;
  Eigen::VectorXd cov_weights;
  SigmaParams params;

  Eigen::Index count() const { return points.cols(); }
};

inline constexpr int kCholeskyRetries = 3;

/// Lower Cholesky factor of m. On failure adds 1e-9 * trace / n to the
/// diagonal and retries, up to kCholeskyRetries times.
inline Eigen::MatrixXd jittered_cholesky(Eigen::MatrixXd m) {
  const Eigen::Index n = m.rows();
  const double mean_diag = m.trace() / static_cast<double>(n);
  const double jitter = 1e-9 * (mean_diag > 0.0 ? mean_diag : 1.0);
  for (int attempt = 0; attempt <= kCholeskyRetries; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    m.diagonal().array() += jitter;
  }
  throw NumericalDegeneracy("sigma_points: Cholesky failed after jitter retries");
}

inline SigmaPointSet sigma_points(const GaussianVec& g, const SigmaParams& params = {}) {
  const Eigen::Index n = g.dim();
  if (n == 0 || g.cov.rows() != n || g.cov.cols() != n) {
    throw InvalidArgument("sigma_points: mean/covariance dimension mismatch");
  }
  const double nd = static_cast<double>(n);
  const double lambda = params.alpha * params.alpha * (nd + params.kappa) - nd;
  const double spread = nd + lambda;
  if (!(spread > 0.0)) throw InvalidArgument("sigma_points: n + lambda must be positive");

  const Eigen::MatrixXd root = jittered_cholesky(spread * g.cov);

  SigmaPointSet set;
  set.params = params;
  set.points.resize(n, 2 * n + 1);
  set.points.col(0) = g.mean;
  for (Eigen::Index i = 0; i < n; ++i) {
    set.points.col(1 + i) = g.mean + root.col(i);
    set.points.col(1 + n + i) = g.mean - root.col(i);
  }
  set.mean_weights = Eigen::VectorXd::Constant(2 * n + 1, 1.0 / (2.0 * spread));
  set.cov_weights = set.mean_weights;
  set.mean_weights(0) = lambda / spread;
  set.cov_weights(0) = lambda / spread + (1.0 - params.alpha * params.alpha + params.beta);
  return set;
}

/// Applies f column-wise; f maps an n-vector to an m-vector.
template <typename F>
SigmaPointSet transform_points(const SigmaPointSet& set, F&& f) {
  SigmaPointSet out;
  out.params = set.params;
  out.mean_weights = set.mean_weights;
  out.cov_weights = set.cov_weights;
  for (Eigen::Index i = 0; i < set.count(); ++i) {
    Eigen::VectorXd y = f(Eigen::VectorXd(set.points.col(i)));
    if (i == 0) out.points.resize(y.size(), set.count());
    out.points.col(i) = y;
  }
  return out;
}

/// Weighted mean of the points. Rows listed in `angular` are averaged on the
/// circle.
inline Eigen::VectorXd sigma_mean(const SigmaPointSet& set, std::span<const Eigen::Index> angular = {}) {
  Eigen::VectorXd mean = set.points * set.mean_weights;
  for (Eigen::Index row : angular) {
    const Eigen::VectorXd s = set.points.row(row).array().sin();
    const Eigen::VectorXd c = set.points.row(row).array().cos();
    mean(row) = angle_wrap(std::atan2(s.dot(set.mean_weights), c.dot(set.mean_weights)));
  }
  return mean;
}

/// Column i minus `center`, with angular rows wrapped.
inline Eigen::MatrixXd sigma_residuals(const SigmaPointSet& set, const Eigen::VectorXd& center,
                                       std::span<const Eigen::Index> angular = {}) {
  Eigen::MatrixXd r = set.points.colwise() - center;
  for (Eigen::Index row : angular) {
    for (Eigen::Index i = 0; i < r.cols(); ++i) r(row, i) = angle_wrap(r(row, i));
  }
  return r;
}

/// Recovers a Gaussian from transformed sigma points and adds additive noise.
inline GaussianVec unscented_transform(const SigmaPointSet& transformed,
                                       const Eigen::MatrixXd& additive_noise,
                                       std::span<const Eigen::Index> angular = {}) {
  GaussianVec out;
  out.mean = sigma_mean(transformed, angular);
  const Eigen::MatrixXd r = sigma_residuals(transformed, out.mean, angular);
  out.cov = r * transformed.cov_weights.asDiagonal() * r.transpose();
  if (additive_noise.size() != 0) out.cov += additive_noise;
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  return out;
}

}  // namespace aerostate
