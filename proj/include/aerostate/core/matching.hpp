#pragma once

#include <cstddef>
#include <limits>

#include "aerostate/core/descriptor.hpp"

namespace aerostate {

/// Two nearest candidates by Hamming distance. `enough_candidates` is false
/// when fewer than two candidates were scanned.
struct BestTwo {
  std::size_t index1 = 0;
  std::size_t index2 = 0;
  int dist1 = std::numeric_limits<int>::max();
  int dist2 = std::numeric_limits<int>::max();
  bool enough_candidates = false;

  /// Lowe's ratio test: best match is accepted unless dist1 > ratio * dist2.
  bool passes_ratio(double ratio) const {
    return enough_candidates && !(static_cast<double>(dist1) > ratio * static_cast<double>(dist2));
  }
};

/// Scans candidates [0, count) where descriptor_of(i) yields the i-th
/// candidate's descriptor. Ties keep the earlier index.
template <typename DescriptorOf>
BestTwo best_two_matches(const Descriptor& query, std::size_t count, DescriptorOf&& descriptor_of) {
  BestTwo best;
  for (std::size_t i = 0; i < count; ++i) {
    const int d = hamming(query, descriptor_of(i));
    if (d < best.dist1) {
      best.dist2 = best.dist1;
      best.index2 = best.index1;
      best.dist1 = d;
      best.index1 = i;
    } else if (d < best.dist2) {
      best.dist2 = d;
      best.index2 = i;
    }
  }
  best.enough_candidates = count >= 2;
  return best;
}

}  // namespace aerostate
