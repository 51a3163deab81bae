#include "strata/voxel_grid.hpp"

#include <algorithm>
#include <cmath>

#include "strata/errors.hpp"
#include "strata/parallel.hpp"

namespace strata {

std::array<std::int32_t, 3> VoxelGrid::cell_of(const Vec3d& p) const {
  std::array<std::int32_t, 3> cell;
  for (int a = 0; a < 3; ++a) {
    const auto raw =
        static_cast<std::int64_t>(std::floor((p(a) - bounds.min(a)) / edge_length));
    cell[a] = static_cast<std::int32_t>(
        std::clamp<std::int64_t>(raw, 0, dims[a] - 1));
  }
  return cell;
}

VoxelGrid build_grid(const PointCloud& cloud, double zeta) {
  if (!(zeta > 0) || zeta > 1) {
    throw InvalidArgument("build_grid: zeta must be in (0, 1]");
  }
  if (cloud.empty()) {
    throw InvalidArgument("build_grid: point cloud is empty");
  }

  VoxelGrid grid;
  grid.zeta = zeta;
  grid.bounds = bounding_box(cloud).expanded_relative(1e-9);

  const Vec3d extent = grid.bounds.extent();
  const double longest = extent.maxCoeff();
  if (!(longest > 0)) {
    throw DegenerateGeometry("build_grid: cloud has zero spatial extent");
  }
  grid.edge_length = zeta * longest;

  for (int a = 0; a < 3; ++a) {
    grid.dims[a] = std::max<std::int32_t>(
        1, static_cast<std::int32_t>(std::ceil(extent(a) / grid.edge_length)));
  }

  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto c = grid.cell_of(cloud.points[i]);
    grid.cells[grid.linear_index(c[0], c[1], c[2])].push_back(
        static_cast<std::uint32_t>(i));
  }
  return grid;
}

namespace {

std::optional<VoxelPlane> fit_plane_impl(const PointCloud& cloud,
                                         std::span<const std::uint32_t> indices,
                                         std::span<const Vec3d> direct) {
  const std::size_t n = direct.empty() ? indices.size() : direct.size();
  if (n < 3) return std::nullopt;

  auto point = [&](std::size_t i) -> const Vec3d& {
    return direct.empty() ? cloud.points[indices[i]] : direct[i];
  };

  Vec3d centroid = Vec3d::Zero();
  for (std::size_t i = 0; i < n; ++i) centroid += point(i);
  centroid /= static_cast<double>(n);

  Mat3d scatter = Mat3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3d d = point(i) - centroid;
    scatter.noalias() += d * d.transpose();
  }

  const auto eig = symmetric_eigen3(scatter);
  // Rank < 2 means the sample is collinear (or coincident): no plane.
  if (eig.eigenvalues(1) <= 1e-9 * std::max(eig.eigenvalues(2), 1e-300)) {
    return std::nullopt;
  }

  VoxelPlane plane;
  plane.centroid = centroid;
  plane.normal = canonical_sign(Vec3d(eig.eigenvectors.col(0)));
  plane.residual = std::max(0.0, eig.eigenvalues(0)) / static_cast<double>(n);
  plane.point_count = static_cast<std::uint32_t>(n);
  return plane;
}

}  // namespace

std::optional<VoxelPlane> fit_voxel_plane(std::span<const Vec3d> points) {
  static const PointCloud kEmpty{};
  return fit_plane_impl(kEmpty, {}, points);
}

std::vector<VoxelPlane> fit_all(const VoxelGrid& grid, const PointCloud& cloud,
                                std::uint32_t min_points, VoxelFitStats* stats,
                                int threads) {
  const std::uint32_t floor_points = std::max<std::uint32_t>(min_points, 3);

  std::vector<std::uint64_t> keys;
  keys.reserve(grid.cells.size());
  for (const auto& [key, indices] : grid.cells) keys.push_back(key);
  std::sort(keys.begin(), keys.end());

  std::vector<std::optional<VoxelPlane>> slots(keys.size());
  parallel_for(keys.size(), threads, [&](std::size_t s) {
    const auto& indices = grid.cells.at(keys[s]);
    if (indices.size() < floor_points) return;
    auto plane = fit_plane_impl(cloud, indices, {});
    if (plane) plane->voxel = grid.unpack(keys[s]);
    slots[s] = plane;
  });

  std::vector<VoxelPlane> planes;
  planes.reserve(keys.size());
  for (const auto& slot : slots) {
    if (slot) planes.push_back(*slot);
  }
  if (stats != nullptr) {
    stats->occupied = keys.size();
    stats->fitted = planes.size();
    stats->skipped = keys.size() - planes.size();
  }
  return planes;
}

}  // namespace strata
