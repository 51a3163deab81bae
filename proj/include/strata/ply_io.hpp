#pragma once

#include <filesystem>

#include "strata/point_cloud.hpp"

namespace strata {

/// Reads a PLY 1.0 point cloud, ASCII or binary_little_endian.
/// The vertex element must provide numeric x, y, z properties; uchar
/// red/green/blue are picked up when all three are present. Any other
/// elements and properties are skipped. Point order is preserved.
PointCloud read_ply(const std::filesystem::path& path);

/// Writes the cloud as PLY 1.0. Binary files use float64 coordinates so a
/// read-back reproduces the input bit for bit; ASCII uses 17 significant
/// digits. Colors are written as uchar red/green/blue when present.
void write_ply(const PointCloud& cloud, const std::filesystem::path& path,
               bool binary);

}  // namespace strata
