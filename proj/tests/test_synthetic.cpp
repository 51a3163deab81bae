#include <doctest.h>

#include <limits>

#include "strata/synthetic.hpp"

using namespace strata;

namespace {

double distance_to_face_plane(const Vec3d& p, const FaceSpec& face) {
  return std::abs((p - face.center).dot(face.normal));
}

double min_face_point_distance(const PointCloud& cloud, std::size_t per_face,
                               std::size_t face_a, std::size_t face_b,
                               std::size_t stride) {
  double best = std::numeric_limits<double>::max();
  for (std::size_t i = face_a * per_face; i < (face_a + 1) * per_face;
       i += stride) {
    for (std::size_t j = face_b * per_face; j < (face_b + 1) * per_face;
         j += stride) {
      best = std::min(best, (cloud.points[i] - cloud.points[j]).norm());
    }
  }
  return best;
}

}  // namespace

TEST_CASE("noiseless box points lie exactly on their faces") {
  const SyntheticScene scene = box_scene(Vec3d(2, 1, 1.5), false, 500, 0, 0, 3);
  const SyntheticData data = generate_synthetic(scene);
  REQUIRE(data.cloud.size() == 6 * 500);
  REQUIRE(data.truth.size() == 6);
  for (std::size_t f = 0; f < scene.faces.size(); ++f) {
    for (std::size_t i = f * 500; i < (f + 1) * 500; ++i) {
      CHECK(distance_to_face_plane(data.cloud.points[i], scene.faces[f]) <
            1e-12);
    }
  }
}

TEST_CASE("open-top box drops one face") {
  const SyntheticScene scene = box_scene(Vec3d(1, 1, 1), true, 100, 0, 0, 4);
  CHECK(scene.faces.size() == 5);
  CHECK(generate_synthetic(scene).truth.size() == 5);
}

TEST_CASE("generation is reproducible per seed") {
  const SyntheticScene scene = demo_building_scene(800, 12345);
  const SyntheticData a = generate_synthetic(scene);
  const SyntheticData b = generate_synthetic(scene);
  REQUIRE(a.cloud.size() == b.cloud.size());
  for (std::size_t i = 0; i < a.cloud.size(); ++i) {
    CHECK(a.cloud.points[i] == b.cloud.points[i]);
  }

  SyntheticScene other = scene;
  other.rng_seed = 54321;
  const SyntheticData c = generate_synthetic(other);
  CHECK(a.cloud.points[0] != c.cloud.points[0]);
}

TEST_CASE("a 40-degree face generates the expected truth row") {
  SyntheticScene scene;
  scene.faces = {face_from_orientation(Vec3d(0, 0, 0), 40, 89, 2, 1)};
  scene.points_per_face = 10;
  const SyntheticData data = generate_synthetic(scene);
  REQUIRE(data.truth.size() == 1);
  CHECK(data.truth[0].strike_deg == doctest::Approx(359.0).epsilon(1e-9));
  CHECK(data.truth[0].dip_deg == doctest::Approx(40.0).epsilon(1e-9));
  CHECK(data.truth[0].dipdir_deg == doctest::Approx(89.0).epsilon(1e-9));
}

TEST_CASE("outlier fraction and labeling") {
  SyntheticScene scene = box_scene(Vec3d(1, 1, 1), false, 1000, 0.002, 0.02, 9);
  const SyntheticData data = generate_synthetic(scene);
  CHECK(data.surface_points == 6000);
  CHECK(data.outlier_points == 120);
  CHECK(data.cloud.size() == 6120);
  CHECK(data.cloud.colors.size() == data.cloud.size());
}

TEST_CASE("demo building: six faces with survey-table orientations") {
  const SyntheticScene scene = demo_building_scene(2000, 7);
  REQUIRE(scene.faces.size() == 6);
  CHECK(scene.noise_sigma > 0.0);
  CHECK(scene.outlier_fraction == doctest::Approx(0.02));

  const SyntheticData data = generate_synthetic(scene);
  REQUIRE(data.truth.size() == 6);
  const double strikes[6] = {87, 4, 339, 102, 350, 359};
  const double dips[6] = {89, 89, 87, 86, 89, 40};
  for (int i = 0; i < 6; ++i) {
    CHECK(data.truth[i].strike_deg == doctest::Approx(strikes[i]).epsilon(1e-6));
    CHECK(data.truth[i].dip_deg == doctest::Approx(dips[i]).epsilon(1e-6));
  }
}

TEST_CASE("demo building: roof touches wall 2, close-normal pairs stay apart") {
  SyntheticScene scene = demo_building_scene(2000, 7);
  scene.noise_sigma = 0;  // geometry check without jitter
  scene.outlier_fraction = 0;
  const SyntheticData data = generate_synthetic(scene);
  const std::size_t per_face = scene.points_per_face;

  // The roof (face 6) rests on wall 2's top edge.
  CHECK(min_face_point_distance(data.cloud, per_face, 1, 5, 3) < 0.15);

  // Face pairs with normals closer than the widest growing threshold must
  // never share a voxel: walls 1-4 (15 deg), 3-5 (11 deg), 2-3 (25 deg),
  // 2-5 (14 deg).
  const std::pair<std::size_t, std::size_t> close_normal_pairs[] = {
      {0, 3}, {2, 4}, {1, 2}, {1, 4}};
  for (const auto& [a, b] : close_normal_pairs) {
    CHECK(min_face_point_distance(data.cloud, per_face, a, b, 3) > 1.6);
  }
}

TEST_CASE("generator rejects invalid scenes") {
  SyntheticScene empty;
  CHECK_THROWS_AS(generate_synthetic(empty), InvalidArgument);

  SyntheticScene bad = box_scene(Vec3d(1, 1, 1), false, 100, 0, 0, 1);
  bad.outlier_fraction = 1.5;
  CHECK_THROWS_AS(generate_synthetic(bad), InvalidArgument);
  bad.outlier_fraction = 0.1;
  bad.noise_sigma = -1;
  CHECK_THROWS_AS(generate_synthetic(bad), InvalidArgument);
  bad.noise_sigma = 0;
  bad.points_per_face = 0;
  CHECK_THROWS_AS(generate_synthetic(bad), InvalidArgument);
}
