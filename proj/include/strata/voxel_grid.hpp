#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "strata/point_cloud.hpp"

namespace strata {

/// Uniform cubic grid over the cloud's bounding box. The voxel edge is
/// zeta times the longest box axis, so zeta is unitless and halving it
/// multiplies the voxel count roughly eightfold.
struct VoxelGrid {
  Aabb bounds;          // tight box expanded by a 1e-9 relative margin
  double zeta = 0;
  double edge_length = 0;
  std::array<std::int32_t, 3> dims{0, 0, 0};
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells;

  std::uint64_t linear_index(std::int32_t i, std::int32_t j,
                             std::int32_t k) const {
    return (static_cast<std::uint64_t>(i) * dims[1] +
            static_cast<std::uint64_t>(j)) *
               dims[2] +
           static_cast<std::uint64_t>(k);
  }

  std::array<std::int32_t, 3> unpack(std::uint64_t linear) const {
    const auto nz = static_cast<std::uint64_t>(dims[2]);
    const auto ny = static_cast<std::uint64_t>(dims[1]);
    return {static_cast<std::int32_t>(linear / (ny * nz)),
            static_cast<std::int32_t>((linear / nz) % ny),
            static_cast<std::int32_t>(linear % nz)};
  }

  /// Cell containing p, clamped into range so boundary points stay inside.
  std::array<std::int32_t, 3> cell_of(const Vec3d& p) const;
};

VoxelGrid build_grid(const PointCloud& cloud, double zeta);

/// Total-least-squares plane for the points of one voxel.
struct VoxelPlane {
  std::array<std::int32_t, 3> voxel{0, 0, 0};
  Vec3d centroid = Vec3d::Zero();
  Vec3d normal = Vec3d::UnitZ();  // unit, canonical sign (z >= 0)
  double residual = 0;            // smallest scatter eigenvalue / point count
  std::uint32_t point_count = 0;
};

struct VoxelFitStats {
  std::size_t occupied = 0;  // voxels holding at least one point
  std::size_t fitted = 0;
  std::size_t skipped = 0;   // occupied but unfittable or under min_points
};

/// Mean-centered scatter eigendecomposition; the smallest principal
/// direction is the plane normal. Returns nothing for fewer than 3 points
/// or a collinear sample.
std::optional<VoxelPlane> fit_voxel_plane(std::span<const Vec3d> points);

/// Fits every occupied voxel with at least min_points points. Output is
/// ordered by lexicographic voxel index regardless of thread count.
std::vector<VoxelPlane> fit_all(const VoxelGrid& grid, const PointCloud& cloud,
                                std::uint32_t min_points,
                                VoxelFitStats* stats = nullptr,
                                int threads = 1);

}  // namespace strata
