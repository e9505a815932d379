#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "aerostate/core/errors.hpp"

namespace aerostate {

/// Mean vector and covariance of a multivariate Gaussian.
struct GaussianVec {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;

  Eigen::Index dim() const { return mean.size(); }
};

inline bool is_symmetric(const Eigen::MatrixXd& m, double tol = 1e-9) {
  return m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

inline double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()),
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

inline bool is_psd(const Eigen::MatrixXd& m, double tol = 1e-9) {
  return is_symmetric(m, tol) && min_eigenvalue(m) >= -tol;
}

inline double log_gaussian_prob(double residual, double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian_prob: sigma must be positive");
  const double z = residual / sigma;
  return -0.5 * z * z - std::log(sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
}

/// Zero-mean normal density of `residual` with standard deviation `sigma`.
inline double gaussian_prob(double residual, double sigma) {
  return std::exp(log_gaussian_prob(residual, sigma));
}

/// log(sum(exp(v))); -inf when every entry is -inf.
inline double log_sum_exp(std::span<const double> values) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (v > peak) peak = v;
  }
  if (!std::isfinite(peak)) return peak;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - peak);
  return peak + std::log(acc);
}

}  // namespace aerostate
