#pragma once

#include <cstdint>
#include <vector>

#include "strata/ground_truth.hpp"
#include "strata/point_cloud.hpp"

namespace strata {

/// One planar rectangle to sample points from.
struct FaceSpec {
  Vec3d center = Vec3d::Zero();
  Vec3d normal = Vec3d::UnitZ();  // unit
  Vec3d u_dir = Vec3d::UnitX();   // unit, in-plane width direction
  double width = 1;
  double height = 1;
};

/// Face with the given planar orientation; width runs along strike.
FaceSpec face_from_orientation(const Vec3d& center, double dip_deg,
                               double dipdir_deg, double width, double height);

struct SyntheticScene {
  std::vector<FaceSpec> faces;
  std::size_t points_per_face = 10000;
  double noise_sigma = 0;         // Gaussian, along each face normal
  double outlier_fraction = 0;    // of the surface point count
  double outlier_inflation = 8;   // outlier box = surface box scaled by this
  std::uint64_t rng_seed = 0;
};

struct SyntheticData {
  PointCloud cloud;               // face points in face order, outliers last
  std::vector<GroundTruthSurface> truth;  // one row per face, from exact normals
  std::size_t surface_points = 0;
  std::size_t outlier_points = 0;
};

/// Samples faces uniformly, perturbs along normals, appends uniform
/// outliers in the inflated surface bounding box. Fully seeded.
SyntheticData generate_synthetic(const SyntheticScene& scene);

/// Axis-aligned box: 4 walls, bottom, and optionally a top.
SyntheticScene box_scene(const Vec3d& dims, bool open_top,
                         std::size_t points_per_face, double noise_sigma,
                         double outlier_fraction, std::uint64_t seed);

/// Gable hut: two vertical walls and two roof pitches, all rectangles.
SyntheticScene prism_scene(double width, double length, double wall_height,
                           double roof_dip_deg, std::size_t points_per_face,
                           double noise_sigma, double outlier_fraction,
                           std::uint64_t seed);

/// Six-face demo building: five near-vertical walls at survey-style
/// orientations plus a 40-degree roof panel. Two wall pairs sit in nearly
/// collinear chains separated by a small gap, so region growing keeps them
/// apart at tight angle thresholds and merges them at loose ones. Noise
/// defaults to 0.3% of the scene extent and outliers to 2%.
SyntheticScene demo_building_scene(std::size_t points_per_face,
                                   std::uint64_t seed);

}  // namespace strata
