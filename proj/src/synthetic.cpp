#include "strata/synthetic.hpp"

#include <cmath>
#include <random>

#include "strata/errors.hpp"
#include "strata/orientation.hpp"

namespace strata {

namespace {

/// Horizontal unit vector at a compass bearing (x = North, east = -y).
Vec3d bearing_dir(double bearing_deg) {
  const double b = deg_to_rad(bearing_deg);
  return {std::cos(b), -std::sin(b), 0.0};
}

Aabb corners_box(const std::vector<FaceSpec>& faces) {
  Aabb box;
  bool first = true;
  for (const FaceSpec& f : faces) {
    const Vec3d v_dir = f.normal.cross(f.u_dir);
    for (const double su : {-1.0, 1.0}) {
      for (const double sv : {-1.0, 1.0}) {
        const Vec3d corner = f.center + su * (f.width / 2) * f.u_dir +
                             sv * (f.height / 2) * v_dir;
        if (first) {
          box.min = box.max = corner;
          first = false;
        } else {
          box.min = box.min.cwiseMin(corner);
          box.max = box.max.cwiseMax(corner);
        }
      }
    }
  }
  return box;
}

constexpr Rgb kFaceColors[] = {
    {230, 80, 60},  {70, 160, 230}, {90, 200, 110}, {240, 190, 60},
    {180, 100, 220}, {60, 210, 200}, {230, 130, 180}, {150, 150, 90},
};

}  // namespace

FaceSpec face_from_orientation(const Vec3d& center, double dip_deg,
                               double dipdir_deg, double width,
                               double height) {
  FaceSpec face;
  face.center = center;
  face.normal = normal_from_dip(dip_deg, dipdir_deg);
  // Strike direction: horizontal, 90 degrees counter to the dip direction.
  face.u_dir = bearing_dir(dipdir_deg - 90.0);
  face.width = width;
  face.height = height;
  return face;
}

SyntheticData generate_synthetic(const SyntheticScene& scene) {
  if (scene.faces.empty()) {
    throw InvalidArgument("generate_synthetic: scene has no faces");
  }
  if (scene.points_per_face < 1) {
    throw InvalidArgument("generate_synthetic: points_per_face must be >= 1");
  }
  if (!(scene.noise_sigma >= 0)) {
    throw InvalidArgument("generate_synthetic: noise sigma must be >= 0");
  }
  if (scene.outlier_fraction < 0 || scene.outlier_fraction > 1) {
    throw InvalidArgument(
        "generate_synthetic: outlier fraction must be in [0, 1]");
  }
  if (scene.outlier_inflation < 1) {
    throw InvalidArgument("generate_synthetic: outlier inflation must be >= 1");
  }

  std::mt19937_64 rng(scene.rng_seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SyntheticData data;
  data.truth.reserve(scene.faces.size());

  int face_id = 0;
  for (const FaceSpec& face : scene.faces) {
    ++face_id;
    const Vec3d v_dir = face.normal.cross(face.u_dir);
    const Rgb color = kFaceColors[(face_id - 1) % std::size(kFaceColors)];
    for (std::size_t i = 0; i < scene.points_per_face; ++i) {
      const double a = unit(rng) * face.width / 2;
      const double b = unit(rng) * face.height / 2;
      const double off = scene.noise_sigma > 0 ? gauss(rng) * scene.noise_sigma : 0.0;
      data.cloud.points.push_back(face.center + a * face.u_dir + b * v_dir +
                                  off * face.normal);
      data.cloud.colors.push_back(color);
    }

    const PlanarOrientation po = orientation_from_normal(face.normal);
    GroundTruthSurface gt;
    gt.id = face_id;
    gt.strike_deg = po.strike_deg.value_or(0.0);
    gt.dip_deg = po.dip_deg;
    gt.dipdir_deg = po.dipdir_deg.value_or(0.0);
    gt.normal = po.source_normal;
    data.truth.push_back(gt);
  }
  data.surface_points = data.cloud.size();

  const auto outliers = static_cast<std::size_t>(std::llround(
      scene.outlier_fraction * static_cast<double>(data.surface_points)));
  if (outliers > 0) {
    const Aabb surface_box = bounding_box(data.cloud);
    const Vec3d center = 0.5 * (surface_box.min + surface_box.max);
    const Vec3d half = 0.5 * scene.outlier_inflation * surface_box.extent();
    for (std::size_t i = 0; i < outliers; ++i) {
      const Vec3d p = center + Vec3d(unit(rng) * half.x(), unit(rng) * half.y(),
                                     unit(rng) * half.z());
      data.cloud.points.push_back(p);
      data.cloud.colors.push_back(Rgb{120, 120, 120});
    }
  }
  data.outlier_points = outliers;
  return data;
}

SyntheticScene box_scene(const Vec3d& dims, bool open_top,
                         std::size_t points_per_face, double noise_sigma,
                         double outlier_fraction, std::uint64_t seed) {
  const double a = dims.x(), b = dims.y(), c = dims.z();
  SyntheticScene scene;
  // Walls: u runs along the horizontal edge, v up.
  scene.faces.push_back({{-a / 2, 0, c / 2}, -Vec3d::UnitX(), Vec3d::UnitY(), b, c});
  scene.faces.push_back({{a / 2, 0, c / 2}, Vec3d::UnitX(), Vec3d::UnitY(), b, c});
  scene.faces.push_back({{0, -b / 2, c / 2}, -Vec3d::UnitY(), Vec3d::UnitX(), a, c});
  scene.faces.push_back({{0, b / 2, c / 2}, Vec3d::UnitY(), Vec3d::UnitX(), a, c});
  scene.faces.push_back({{0, 0, 0}, -Vec3d::UnitZ(), Vec3d::UnitX(), a, b});
  if (!open_top) {
    scene.faces.push_back({{0, 0, c}, Vec3d::UnitZ(), Vec3d::UnitX(), a, b});
  }
  scene.points_per_face = points_per_face;
  scene.noise_sigma = noise_sigma;
  scene.outlier_fraction = outlier_fraction;
  scene.rng_seed = seed;
  return scene;
}

SyntheticScene prism_scene(double width, double length, double wall_height,
                           double roof_dip_deg, std::size_t points_per_face,
                           double noise_sigma, double outlier_fraction,
                           std::uint64_t seed) {
  const double dip = deg_to_rad(roof_dip_deg);
  const double rise = (width / 2) * std::tan(dip);
  const double slope = (width / 2) / std::cos(dip);

  SyntheticScene scene;
  scene.faces.push_back(
      {{width / 2, 0, wall_height / 2}, Vec3d::UnitX(), Vec3d::UnitY(), length, wall_height});
  scene.faces.push_back(
      {{-width / 2, 0, wall_height / 2}, -Vec3d::UnitX(), Vec3d::UnitY(), length, wall_height});

  // Roof pitches meet at a ridge along y above the centerline.
  const Vec3d n_pos(std::sin(dip), 0, std::cos(dip));
  const Vec3d n_neg(-std::sin(dip), 0, std::cos(dip));
  scene.faces.push_back({{width / 4, 0, wall_height + rise / 2}, n_pos,
                         Vec3d::UnitY(), length, slope});
  scene.faces.push_back({{-width / 4, 0, wall_height + rise / 2}, n_neg,
                         Vec3d::UnitY(), length, slope});

  scene.points_per_face = points_per_face;
  scene.noise_sigma = noise_sigma;
  scene.outlier_fraction = outlier_fraction;
  scene.rng_seed = seed;
  return scene;
}

SyntheticScene demo_building_scene(std::size_t points_per_face,
                                   std::uint64_t seed) {
  // Sizing note: the sigma = 4 filter keeps a handful of the injected
  // outliers inside its ellipsoid, which stretches the filtered bounding box
  // (and with it the voxel edge at fixed zeta) by up to ~3x. Faces are large
  // enough to clear min_region_size at that stretched edge, and face pairs
  // with normals closer than ~30 degrees are kept more than sqrt(3) stretched
  // edges apart so no voxel can blend two of them. The roof deliberately
  // rests on wall 2's top edge: the 49 degree fold between them is too wide
  // to leak across at tight angle thresholds, but contaminates or merges the
  // two regions once theta grows past the mid-twenties.
  constexpr double kWallWidth = 2.8;
  constexpr double kWallHeight = 3.6;
  constexpr double kRoofWidth = 3.4;
  constexpr double kRoofHeight = 2.6;
  constexpr double kRoofOverlap = 0.1;

  SyntheticScene scene;
  scene.faces.resize(6);

  scene.faces[0] = face_from_orientation({1.9, 1.45, 0}, 89, 177, kWallWidth,
                                         kWallHeight);
  scene.faces[1] =
      face_from_orientation({0, 0, 0}, 89, 94, kWallWidth, kWallHeight);
  scene.faces[2] = face_from_orientation({-2.2, -2.35, 0}, 87, 69, kWallWidth,
                                         kWallHeight);
  scene.faces[3] = face_from_orientation({-1.9, 1.45, 0}, 86, 192, kWallWidth,
                                         kWallHeight);
  scene.faces[4] = face_from_orientation({2.45, -2.35, 0}, 89, 80, kWallWidth,
                                         kWallHeight);

  // Roof panel resting on wall 2's top edge, sunk in slightly so the fold
  // region is populated on both sides.
  FaceSpec roof = face_from_orientation({0, 0, 0}, 40, 89, kRoofWidth,
                                        kRoofHeight);
  const FaceSpec& wall2 = scene.faces[1];
  const Vec3d wall2_up = wall2.normal.cross(wall2.u_dir);
  const Vec3d roof_updip = roof.normal.cross(roof.u_dir);
  roof.center = wall2.center + (kWallHeight / 2) * wall2_up +
                (kRoofHeight / 2 - kRoofOverlap) * roof_updip;
  scene.faces[5] = roof;

  scene.points_per_face = points_per_face;
  scene.noise_sigma = 0.003 * corners_box(scene.faces).longest_extent();
  scene.outlier_fraction = 0.02;
  scene.outlier_inflation = 8;
  scene.rng_seed = seed;
  return scene;
}

}  // namespace strata
