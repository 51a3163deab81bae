#pragma once

#include <filesystem>
#include <vector>

#include "strata/geometry.hpp"

namespace strata {

/// One surveyed reference surface: angles in degrees plus its unit normal.
struct GroundTruthSurface {
  int id = 0;
  double strike_deg = 0;   // [0, 360)
  double dip_deg = 0;      // [0, 90]
  double dipdir_deg = 0;   // [0, 360)
  Vec3d normal = Vec3d::UnitZ();
};

/// Reads a ground-truth CSV with header id,strike,dip,dipdir,nx,ny,nz.
/// Angle ranges are enforced on load; normals must be unit length within
/// 1e-3 and are renormalized. Errors name the offending row.
std::vector<GroundTruthSurface> read_ground_truth(
    const std::filesystem::path& path);

void write_ground_truth(const std::vector<GroundTruthSurface>& surfaces,
                        const std::filesystem::path& path);

}  // namespace strata
