#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "strata/errors.hpp"
#include "strata/geometry.hpp"

namespace strata {

using Rgb = std::array<std::uint8_t, 3>;

/// Ordered 3D points with optional per-point color.
struct PointCloud {
  std::vector<Vec3d> points;
  std::vector<Rgb> colors;  // empty, or exactly one entry per point

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_colors() const { return !colors.empty(); }

  /// Subset in the order given; carries colors along when present.
  PointCloud take(const std::vector<std::uint32_t>& indices) const {
    PointCloud out;
    out.points.reserve(indices.size());
    for (const std::uint32_t i : indices) out.points.push_back(points[i]);
    if (has_colors()) {
      out.colors.reserve(indices.size());
      for (const std::uint32_t i : indices) out.colors.push_back(colors[i]);
    }
    return out;
  }
};

inline Aabb bounding_box(const PointCloud& cloud) {
  if (cloud.empty()) {
    throw InvalidArgument("bounding_box: point cloud is empty");
  }
  Aabb box{cloud.points.front(), cloud.points.front()};
  for (const Vec3d& p : cloud.points) {
    box.min = box.min.cwiseMin(p);
    box.max = box.max.cwiseMax(p);
  }
  return box;
}

}  // namespace strata
