#pragma once

#include <algorithm>
#include <cmath>

#include "aerostate/core/angles.hpp"
#include "aerostate/core/errors.hpp"

namespace aerostate {

/// Full horizontal and vertical field of view of the downward camera, radians.
struct CameraFov {
  double horizontal = deg_to_rad(60.0);
  double vertical = deg_to_rad(45.0);
};

/// Radius of the largest ground circle fully inside the camera view.
inline double get_perceptual_range(double height, const CameraFov& fov) {
  if (!(height > 0.0)) throw InvalidArgument("get_perceptual_range: height must be positive");
  return height * std::tan(std::min(fov.horizontal, fov.vertical) / 2.0);
}

}  // namespace aerostate
