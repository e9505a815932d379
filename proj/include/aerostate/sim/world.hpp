#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "aerostate/core/descriptor.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/core/random.hpp"
#include "aerostate/mcl/feature_map.hpp"

namespace aerostate::sim {

/// Ground-truth textured surface. `response` is each feature's detector
/// strength; cameras keep the strongest features when over their cap.
struct World {
  mcl::Bounds bounds;
  std::vector<mcl::MapFeature> features;
  std::vector<float> response;
  std::uint64_t seed = 0;
  double density = 0.0;
  mcl::FeatureMap index;

  double area() const { return bounds.width * bounds.height; }
  double achieved_density() const { return static_cast<double>(features.size()) / area(); }
};

/// Jittered-grid scatter: one feature per cell of side ~1/sqrt(density), at
/// a uniform position inside the cell, with a uniformly random descriptor.
inline World generate_world(const mcl::Bounds& bounds, double density, std::uint64_t seed) {
  if (!(density > 0.0)) throw InvalidArgument("generate_world: density must be positive");
  if (!(bounds.width > 0.0 && bounds.height > 0.0)) {
    throw InvalidArgument("generate_world: bounds must have positive extent");
  }
  const double cell = 1.0 / std::sqrt(density);
  const auto nx = static_cast<std::size_t>(std::max(1.0, std::round(bounds.width / cell)));
  const auto ny = static_cast<std::size_t>(std::max(1.0, std::round(bounds.height / cell)));
  const double cw = bounds.width / static_cast<double>(nx);
  const double ch = bounds.height / static_cast<double>(ny);

  Rng rng = make_stream(seed, 0, 0, Stream::kWorld);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<float> strength(0.0F, 1.0F);

  World w;
  w.bounds = bounds;
  w.seed = seed;
  w.density = density;
  w.features.reserve(nx * ny);
  w.response.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      mcl::MapFeature f;
      f.id = static_cast<std::uint32_t>(w.features.size());
      const double fx = (static_cast<double>(i) + unit(rng)) * cw;
      const double fy = (static_cast<double>(j) + unit(rng)) * ch;
      f.position = {bounds.origin_x + std::min(fx, bounds.width),
                    bounds.origin_y + std::min(fy, bounds.height)};
      f.descriptor = random_descriptor(rng);
      w.features.push_back(f);
      w.response.push_back(strength(rng));
    }
  }
  w.index = mcl::FeatureMap(bounds, w.features);
  return w;
}

}  // namespace aerostate::sim
