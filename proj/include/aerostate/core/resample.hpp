#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "aerostate/core/errors.hpp"
#include "aerostate/core/gaussian.hpp"
#include "aerostate/core/random.hpp"

namespace aerostate {

/// exp(log_w - logsumexp(log_w)).
inline std::vector<double> normalized_weights(std::span<const double> log_weights) {
  const double total = log_sum_exp(log_weights);
  if (!std::isfinite(total)) throw DegenerateWeights("all particle weights are zero");
  std::vector<double> w(log_weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_weights[i] - total);
  return w;
}

/// Low-variance (systematic) resampler: one uniform offset, n_out evenly
/// spaced pointers into the cumulative weight distribution.
inline std::vector<std::size_t> systematic_resample(std::span<const double> log_weights,
                                                    std::size_t n_out, Rng& rng) {
  if (log_weights.empty()) throw DegenerateWeights("systematic_resample: no weights");
  const std::vector<double> w = normalized_weights(log_weights);
  std::vector<std::size_t> out;
  out.reserve(n_out);
  if (n_out == 0) return out;

  const double step = 1.0 / static_cast<double>(n_out);
  std::uniform_real_distribution<double> offset(0.0, step);
  const double start = offset(rng);

  std::size_t i = 0;
  double cumulative = w[0];
  const std::size_t last = w.size() - 1;
  for (std::size_t j = 0; j < n_out; ++j) {
    const double u = start + static_cast<double>(j) * step;
    while (u >= cumulative && i < last) {
      ++i;
      cumulative += w[i];
    }
    out.push_back(i);
  }
  return out;
}

}  // namespace aerostate

namespace aerostate {

/// Builds the resampled population from `source` by value. Each source
/// element is copied for all but its last selection, which moves it, so
/// heavy per-particle state is never shared between the outputs.
template <typename P>
std::vector<P> gather_resampled(std::vector<P>& source, std::span<const std::size_t> indices) {
  std::vector<std::size_t> remaining(source.size(), 0);
  for (std::size_t i : indices) ++remaining[i];
  std::vector<P> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (--remaining[i] == 0) {
      out.push_back(std::move(source[i]));
    } else {
      out.push_back(source[i]);
    }
  }
  return out;
}

}  // namespace aerostate
