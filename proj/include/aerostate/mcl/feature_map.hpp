#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "aerostate/core/errors.hpp"
#include "aerostate/mcl/types.hpp"

namespace aerostate::mcl {

/// Axis-aligned map extent. Serialized as width/height plus an origin that
/// defaults to (0, 0).
struct Bounds {
  double width = 0.0;
  double height = 0.0;
  double origin_x = 0.0;
  double origin_y = 0.0;

  bool contains(const Eigen::Vector2d& p) const {
    return p.x() >= origin_x && p.x() <= origin_x + width && p.y() >= origin_y &&
           p.y() <= origin_y + height;
  }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Known landmark map with a uniform-grid spatial index. Positions and
/// descriptors are also kept in cell order so radius queries stream through
/// contiguous memory.
class FeatureMap {
 public:
  static constexpr double kDefaultCellSize = 0.05;

  FeatureMap() = default;

  FeatureMap(Bounds bounds, std::vector<MapFeature> features, double cell_size = kDefaultCellSize)
      : bounds_(bounds), features_(std::move(features)), cell_size_(cell_size) {
    if (!(bounds_.width > 0.0 && bounds_.height > 0.0)) {
      throw InvalidArgument("FeatureMap: bounds must have positive extent");
    }
    if (!(cell_size_ > 0.0)) throw InvalidArgument("FeatureMap: cell size must be positive");
    for (const auto& f : features_) {
      if (!bounds_.contains(f.position)) {
        throw InvalidArgument("FeatureMap: feature " + std::to_string(f.id) + " lies outside the bounds");
      }
    }
    build_index();
  }

  const Bounds& bounds() const { return bounds_; }
  const std::vector<MapFeature>& features() const { return features_; }
  std::size_t size() const { return features_.size(); }
  bool empty() const { return features_.empty(); }

  /// Calls visit(slot) for every feature with |p - center| <= radius. `slot`
  /// indexes the cell-ordered arrays (sorted_position / sorted_descriptor /
  /// feature_index).
  template <typename Visit>
  void for_each_within(const Eigen::Vector2d& center, double radius, Visit&& visit) const {
    if (features_.empty() || radius < 0.0) return;
    const double r2 = radius * radius;
    const int cx0 = cell_x(center.x() - radius), cx1 = cell_x(center.x() + radius);
    const int cy0 = cell_y(center.y() - radius), cy1 = cell_y(center.y() + radius);
    for (int cy = cy0; cy <= cy1; ++cy) {
      for (int cx = cx0; cx <= cx1; ++cx) {
        const std::size_t cell = static_cast<std::size_t>(cy) * nx_ + static_cast<std::size_t>(cx);
        for (std::uint32_t s = cell_start_[cell]; s < cell_start_[cell + 1]; ++s) {
          if ((sorted_position_[s] - center).squaredNorm() <= r2) visit(s);
        }
      }
    }
  }

  /// Indices into features() within radius, ascending.
  std::vector<std::size_t> query_radius(const Eigen::Vector2d& center, double radius) const {
    std::vector<std::size_t> out;
    for_each_within(center, radius, [&](std::uint32_t s) { out.push_back(feature_index_[s]); });
    std::sort(out.begin(), out.end());
    return out;
  }

  const Eigen::Vector2d& sorted_position(std::uint32_t slot) const { return sorted_position_[slot]; }
  const Descriptor& sorted_descriptor(std::uint32_t slot) const { return sorted_descriptor_[slot]; }
  std::uint32_t feature_index(std::uint32_t slot) const { return feature_index_[slot]; }

 private:
  int cell_x(double x) const {
    const double c = std::floor((x - bounds_.origin_x) / cell_size_);
    return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(nx_ - 1)));
  }
  int cell_y(double y) const {
    const double c = std::floor((y - bounds_.origin_y) / cell_size_);
    return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(ny_ - 1)));
  }

  void build_index() {
    nx_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bounds_.width / cell_size_)));
    ny_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bounds_.height / cell_size_)));
    const std::size_t cells = nx_ * ny_;
    std::vector<std::size_t> cell_of(features_.size());
    cell_start_.assign(cells + 1, 0);
    for (std::size_t i = 0; i < features_.size(); ++i) {
      const auto& p = features_[i].position;
      cell_of[i] = static_cast<std::size_t>(cell_y(p.y())) * nx_ + static_cast<std::size_t>(cell_x(p.x()));
      ++cell_start_[cell_of[i] + 1];
    }
    for (std::size_t c = 0; c < cells; ++c) cell_start_[c + 1] += cell_start_[c];

    std::vector<std::uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
    sorted_position_.resize(features_.size());
    sorted_descriptor_.resize(features_.size());
    feature_index_.resize(features_.size());
    for (std::size_t i = 0; i < features_.size(); ++i) {
      const std::uint32_t slot = cursor[cell_of[i]]++;
      sorted_position_[slot] = features_[i].position;
      sorted_descriptor_[slot] = features_[i].descriptor;
      feature_index_[slot] = static_cast<std::uint32_t>(i);
    }
  }

  Bounds bounds_;
  std::vector<MapFeature> features_;
  double cell_size_ = kDefaultCellSize;
  std::size_t nx_ = 0, ny_ = 0;
  std::vector<std::uint32_t> cell_start_;
  std::vector<Eigen::Vector2d> sorted_position_;
  std::vector<Descriptor> sorted_descriptor_;
  std::vector<std::uint32_t> feature_index_;
};

}  // namespace aerostate::mcl
