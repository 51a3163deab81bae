#pragma once

#include <vector>

#include "strata/region_growing.hpp"
#include "strata/voxel_grid.hpp"

namespace strata {

/// Unbounded plane through a region: centroid origin, aggregated normal,
/// and a right-handed orthonormal in-plane basis {u, v, normal}.
struct IdealPlane {
  Vec3d origin = Vec3d::Zero();
  Vec3d normal = Vec3d::UnitZ();
  Vec3d u_axis = Vec3d::UnitX();
  Vec3d v_axis = Vec3d::UnitY();
};

/// In-plane coordinates (beta along u, gamma along v) plus the out-of-plane
/// offset for each projected point.
struct RegionFrameCoords {
  std::vector<Vec2d> uv;
  std::vector<double> offsets;
};

/// Final bounded rectangle summarizing one region.
struct RegionPlane {
  int region_id = 0;
  Vec3d center = Vec3d::Zero();
  Vec3d normal = Vec3d::UnitZ();
  Vec3d axis_u = Vec3d::UnitX();   // rectangle width direction
  Vec3d axis_v = Vec3d::UnitY();   // rectangle height direction
  Vec2d half_extents = Vec2d::Zero();
  double phi_star = 0;             // optimal in-plane rotation, radians
  double perimeter = 0;
  std::size_t point_count = 0;
};

/// Origin is the point-count-weighted mean of member centroids; the normal
/// is the dominant direction of the weighted normal orientation tensor
/// (sign-insensitive, so opposing fit signs cannot cancel). When the tensor
/// is directionless the plane falls back to a fit of the member centroids.
IdealPlane ideal_plane(const Region& region,
                       const std::vector<VoxelPlane>& planes,
                       bool weighted = true);

RegionFrameCoords project_to_region_space(const IdealPlane& plane,
                                          const std::vector<Vec3d>& points);

/// Perimeter of the axis-aligned bounding rectangle after rotating the
/// in-plane coordinates by phi. Periodic with period pi/2.
double perimeter_at(const std::vector<Vec2d>& uv, double phi);

struct PerimeterMinimum {
  double phi_star = 0;            // in [0, pi/2)
  Vec2d half_extents = Vec2d::Zero();
  Vec2d rect_center = Vec2d::Zero();  // rectangle midpoint in the rotated frame
  double perimeter = 0;
};

/// Minimum-perimeter bounding rectangle over the rotation angle. A coarse
/// half-degree scan brackets the best basin (the objective may have several
/// narrow local minima), then golden-section search converges the bracket
/// below 1e-9 rad and the best angle evaluated anywhere wins.
PerimeterMinimum minimize_perimeter(const std::vector<Vec2d>& uv);

/// Cloud point indices covered by the region's voxels.
std::vector<std::uint32_t> region_point_indices(
    const Region& region, const std::vector<VoxelPlane>& planes,
    const VoxelGrid& grid);

/// Ideal plane -> region-space projection -> minimum-perimeter rectangle.
/// Rectangle axes are the ideal basis rotated in-plane about the normal by
/// the optimal angle; the center is the origin shifted to the rectangle
/// midpoint.
RegionPlane build_region_plane(const Region& region,
                               const std::vector<VoxelPlane>& planes,
                               const VoxelGrid& grid, const PointCloud& cloud,
                               bool weighted_normal = true);

}  // namespace strata
