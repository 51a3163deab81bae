#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strata/geometry.hpp"
#include "strata/voxel_grid.hpp"

namespace strata {

/// Exact k-nearest-neighbor search over 3D points. Candidates are ordered
/// by (squared distance, index), so equidistant ties always resolve to the
/// lower index and results match an exhaustive scan exactly.
class KdTree3 {
 public:
  KdTree3() = default;
  explicit KdTree3(std::vector<Vec3d> points);

  std::size_t size() const { return points_.size(); }

  /// Indices of the k nearest points to `query`, nearest first. `exclude`
  /// removes one index (typically the query point itself) from candidacy.
  std::vector<std::uint32_t> nearest(
      const Vec3d& query, std::size_t k,
      std::optional<std::uint32_t> exclude = std::nullopt) const;

 private:
  struct BestSet;
  void search(std::size_t lo, std::size_t hi, const Vec3d& query,
              std::optional<std::uint32_t> exclude, BestSet& best) const;

  std::vector<Vec3d> points_;
  std::vector<std::uint32_t> order_;  // median-layout tree over point indices
  std::vector<std::uint8_t> axis_;    // split axis at each median slot
};

/// Per-plane nearest neighbors by centroid distance (self excluded),
/// nearest first, at most k entries each.
std::vector<std::vector<std::uint32_t>> knn_index(
    const std::vector<VoxelPlane>& planes, std::size_t k, int threads = 1);

}  // namespace strata
