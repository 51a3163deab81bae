#pragma once

#include <cstdint>
#include <vector>

#include "strata/voxel_grid.hpp"

namespace strata {

struct GrowParams {
  double theta_deg = 6.0;          // max normal deviation from the admitting seed
  double psi = 0.1;                // co-planarity offset gating seed promotion
  std::size_t k = 7;               // neighbor count of the kNN index
  std::size_t min_region_size = 10;  // smaller regions go to the unsegmented pool
};

/// One grown macroscale surface over voxel-plane indices.
struct Region {
  int id = 0;
  std::vector<std::uint32_t> members;      // admission order
  std::vector<std::uint32_t> admitted_by;  // admitting seed per member
  std::vector<std::uint32_t> seed_history; // seeds in consumption order
};

struct Segmentation {
  std::vector<Region> regions;             // largest first
  std::vector<std::uint32_t> unsegmented;  // ascending plane indices
};

/// Seed-queue region growing over the voxel planes.
///
/// Planes seed new regions in ascending fit-residual order. Each seed offers
/// membership to its k nearest unassigned neighbors whose normals lie within
/// theta of the seed normal (acute angle, sign-insensitive); a joining
/// neighbor is promoted to a further seed only if its centroid offset from
/// the seed plane stays within psi. Deterministic for fixed input.
Segmentation grow_regions(const std::vector<VoxelPlane>& planes,
                          const GrowParams& params, int threads = 1);

}  // namespace strata
