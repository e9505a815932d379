#pragma once

#include <cstdint>
#include <random>

namespace aerostate {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Purpose tags for derived random streams.
enum class Stream : std::uint64_t {
  kMotion = 1,
  kMeasurement = 2,
  kResample = 3,
  kInit = 4,
  kWorld = 5,
  kSensor = 6,
};

/// Counter-based stream derivation: the generator for (seed, step, index,
/// purpose) depends only on those four values, so per-particle work can run
/// on any thread in any order and still reproduce bit-for-bit.
inline Rng make_stream(std::uint64_t seed, std::uint64_t step, std::uint64_t index,
                       Stream purpose) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ step);
  h = splitmix64(h ^ index);
  h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
  return Rng{h};
}

/// Standard-normal draw scaled by sigma; sigma == 0 consumes no randomness.
inline double sample_normal(Rng& rng, double sigma) {
  if (sigma == 0.0) return 0.0;
  std::normal_distribution<double> dist(0.0, sigma);
  return dist(rng);
}

}  // namespace aerostate
