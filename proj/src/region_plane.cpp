#include "strata/region_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "strata/errors.hpp"
#include "strata/optimize.hpp"

namespace strata {

namespace {

constexpr double kHalfPi = kPi / 2.0;

/// In-plane basis from a normal: u is the world axis least aligned with the
/// normal projected into the plane, v completes the right-handed frame.
void plane_basis(const Vec3d& normal, Vec3d& u, Vec3d& v) {
  int least = 0;
  normal.cwiseAbs().minCoeff(&least);
  const Vec3d axis = Vec3d::Unit(least);
  u = (axis - axis.dot(normal) * normal).normalized();
  v = normal.cross(u);
}

struct Rect {
  Vec2d lo;
  Vec2d hi;
  double perimeter() const {
    return 2.0 * ((hi.x() - lo.x()) + (hi.y() - lo.y()));
  }
};

double cross2(const Vec2d& o, const Vec2d& a, const Vec2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) -
         (a.y() - o.y()) * (b.x() - o.x());
}

/// Akl-Toussaint rejection: points strictly inside the octagon whose
/// vertices attain the directional extremes of x, x+y, y, y-x (and their
/// negatives) cannot be hull vertices. One linear pass that typically
/// discards almost everything before the hull sort.
void discard_octagon_interior(std::vector<Vec2d>& pts) {
  if (pts.size() < 64) return;

  // Extreme points in eight outward directions, counterclockwise.
  const std::array<Vec2d, 8> dirs{Vec2d(1, 0), Vec2d(1, 1), Vec2d(0, 1),
                                  Vec2d(-1, 1), Vec2d(-1, 0), Vec2d(-1, -1),
                                  Vec2d(0, -1), Vec2d(1, -1)};
  std::array<Vec2d, 8> corner;
  corner.fill(pts[0]);
  std::array<double, 8> best;
  for (int k = 0; k < 8; ++k) best[k] = dirs[k].dot(pts[0]);
  for (const Vec2d& p : pts) {
    for (int k = 0; k < 8; ++k) {
      const double v = dirs[k].dot(p);
      if (v > best[k]) {
        best[k] = v;
        corner[k] = p;
      }
    }
  }

  // Distinct consecutive corners form the octagon edges (CCW).
  std::vector<std::pair<Vec2d, Vec2d>> edges;
  for (int k = 0; k < 8; ++k) {
    const Vec2d& a = corner[k];
    const Vec2d& b = corner[(k + 1) % 8];
    if (a.x() != b.x() || a.y() != b.y()) edges.emplace_back(a, b);
  }
  if (edges.size() < 3) return;

  auto strictly_inside = [&edges](const Vec2d& p) {
    for (const auto& [a, b] : edges) {
      if (cross2(a, b, p) <= 0) return false;
    }
    return true;
  };
  pts.erase(std::remove_if(pts.begin(), pts.end(), strictly_inside),
            pts.end());
}

/// Andrew monotone chain. The rotated bounding rectangle depends only on
/// the hull, so the angle search evaluates a few dozen vertices instead of
/// every region point.
std::vector<Vec2d> convex_hull(std::vector<Vec2d> pts) {
  discard_octagon_interior(pts);
  std::sort(pts.begin(), pts.end(), [](const Vec2d& a, const Vec2d& b) {
    if (a.x() != b.x()) return a.x() < b.x();
    return a.y() < b.y();
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2d& a, const Vec2d& b) {
                          return a.x() == b.x() && a.y() == b.y();
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  std::vector<Vec2d> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Rect bounding_rect(const std::vector<Vec2d>& uv, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  Rect r{{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()},
         {std::numeric_limits<double>::lowest(),
          std::numeric_limits<double>::lowest()}};
  for (const Vec2d& p : uv) {
    const double x = c * p.x() - s * p.y();
    const double y = s * p.x() + c * p.y();
    r.lo.x() = std::min(r.lo.x(), x);
    r.lo.y() = std::min(r.lo.y(), y);
    r.hi.x() = std::max(r.hi.x(), x);
    r.hi.y() = std::max(r.hi.y(), y);
  }
  return r;
}

}  // namespace

IdealPlane ideal_plane(const Region& region,
                       const std::vector<VoxelPlane>& planes, bool weighted) {
  if (region.members.empty()) {
    throw InvalidArgument("ideal_plane: region has no members");
  }

  double total_weight = 0;
  Vec3d origin = Vec3d::Zero();
  Mat3d orientation_tensor = Mat3d::Zero();
  for (const std::uint32_t m : region.members) {
    const VoxelPlane& plane = planes[m];
    const double w = weighted ? static_cast<double>(plane.point_count) : 1.0;
    total_weight += w;
    origin += w * plane.centroid;
    orientation_tensor.noalias() +=
        w * (plane.normal * plane.normal.transpose());
  }
  origin /= total_weight;
  orientation_tensor /= total_weight;

  IdealPlane ideal;
  ideal.origin = origin;

  const auto eig = symmetric_eigen3(orientation_tensor);
  const bool directionless =
      eig.eigenvalues(2) - eig.eigenvalues(1) <=
      1e-9 * std::max(eig.eigenvalues(2), 1e-300);
  if (!directionless) {
    ideal.normal = canonical_sign(Vec3d(eig.eigenvectors.col(2)));
  } else {
    // Mutually canceling normals: recover the plane from member centroids.
    if (region.members.size() < 3) {
      throw DegenerateGeometry(
          "ideal_plane: orientation tensor is directionless and the region "
          "is too small to refit");
    }
    Mat3d scatter = Mat3d::Zero();
    for (const std::uint32_t m : region.members) {
      const Vec3d d = planes[m].centroid - origin;
      scatter.noalias() += d * d.transpose();
    }
    const auto centroid_eig = symmetric_eigen3(scatter);
    if (centroid_eig.eigenvalues(1) <=
        1e-9 * std::max(centroid_eig.eigenvalues(2), 1e-300)) {
      throw DegenerateGeometry(
          "ideal_plane: member centroids are collinear; no plane is defined");
    }
    ideal.normal = canonical_sign(Vec3d(centroid_eig.eigenvectors.col(0)));
  }

  plane_basis(ideal.normal, ideal.u_axis, ideal.v_axis);
  return ideal;
}

RegionFrameCoords project_to_region_space(const IdealPlane& plane,
                                          const std::vector<Vec3d>& points) {
  RegionFrameCoords coords;
  coords.uv.reserve(points.size());
  coords.offsets.reserve(points.size());
  for (const Vec3d& p : points) {
    const Vec3d d = p - plane.origin;
    coords.uv.emplace_back(d.dot(plane.u_axis), d.dot(plane.v_axis));
    coords.offsets.push_back(d.dot(plane.normal));
  }
  return coords;
}

double perimeter_at(const std::vector<Vec2d>& uv, double phi) {
  if (uv.empty()) {
    throw InvalidArgument("perimeter_at: no points");
  }
  return bounding_rect(uv, phi).perimeter();
}

PerimeterMinimum minimize_perimeter(const std::vector<Vec2d>& uv) {
  if (uv.size() < 2) {
    throw DegenerateGeometry("minimize_perimeter: need at least 2 points");
  }
  bool distinct = false;
  for (const Vec2d& p : uv) {
    if ((p - uv.front()).squaredNorm() > 0) {
      distinct = true;
      break;
    }
  }
  if (!distinct) {
    throw DegenerateGeometry("minimize_perimeter: all points coincide");
  }

  const std::vector<Vec2d> hull = convex_hull(uv);
  auto objective = [&hull](double phi) { return perimeter_at(hull, phi); };

  // The objective is a lower envelope of sinusoids over the hull's support
  // vertices; basins can be under a degree wide, so the coarse scan must
  // be dense enough to land in the global one.
  constexpr int kCoarseSamples = 180;
  constexpr double kStep = kHalfPi / kCoarseSamples;
  int best = 0;
  double best_value = std::numeric_limits<double>::max();
  for (int i = 0; i < kCoarseSamples; ++i) {
    const double value = objective(i * kStep);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }

  // Golden-section inside the bracket around the best coarse sample. The
  // objective is pi/2-periodic, so a bracket crossing 0 or pi/2 is fine.
  // The minimum usually sits at a kink (the bounding box changes support
  // vertex there), where the perimeter error grows linearly with the bracket
  // width; converging to 1e-9 rad keeps that error below 1e-6 length units.
  const auto result = golden_section_minimize(
      objective, (best - 1) * kStep, (best + 1) * kStep, 1e-9);

  double phi = std::fmod(result.fx <= best_value ? result.x : best * kStep,
                         kHalfPi);
  if (phi < 0) phi += kHalfPi;

  // Final rectangle over the full set, so containment is exact even under
  // the last-bit rounding differences between hull and interior points.
  const Rect rect = bounding_rect(uv, phi);
  PerimeterMinimum out;
  out.phi_star = phi;
  out.half_extents = 0.5 * (rect.hi - rect.lo);
  out.rect_center = 0.5 * (rect.hi + rect.lo);
  out.perimeter = rect.perimeter();
  return out;
}

std::vector<std::uint32_t> region_point_indices(
    const Region& region, const std::vector<VoxelPlane>& planes,
    const VoxelGrid& grid) {
  std::vector<std::uint32_t> indices;
  for (const std::uint32_t m : region.members) {
    const auto& voxel = planes[m].voxel;
    const auto it =
        grid.cells.find(grid.linear_index(voxel[0], voxel[1], voxel[2]));
    if (it == grid.cells.end()) continue;
    indices.insert(indices.end(), it->second.begin(), it->second.end());
  }
  return indices;
}

RegionPlane build_region_plane(const Region& region,
                               const std::vector<VoxelPlane>& planes,
                               const VoxelGrid& grid, const PointCloud& cloud,
                               bool weighted_normal) {
  const IdealPlane ideal = ideal_plane(region, planes, weighted_normal);

  const auto indices = region_point_indices(region, planes, grid);
  std::vector<Vec3d> points;
  points.reserve(indices.size());
  for (const std::uint32_t i : indices) points.push_back(cloud.points[i]);

  const RegionFrameCoords coords = project_to_region_space(ideal, points);
  const PerimeterMinimum minimum = minimize_perimeter(coords.uv);
  if (minimum.half_extents.minCoeff() <= 0) {
    throw DegenerateGeometry(
        "build_region_plane: region points are collinear in-plane");
  }

  // The rotated-frame axes expressed in world coordinates: rotating the
  // coordinates by phi* corresponds to rotating the basis by -phi* about
  // the plane normal.
  const Mat3d rotation = rodrigues_rotation(ideal.normal, -minimum.phi_star);

  RegionPlane out;
  out.region_id = region.id;
  out.normal = ideal.normal;
  out.axis_u = rotation * ideal.u_axis;
  out.axis_v = rotation * ideal.v_axis;
  out.center = ideal.origin + minimum.rect_center.x() * out.axis_u +
               minimum.rect_center.y() * out.axis_v;
  out.half_extents = minimum.half_extents;
  out.phi_star = minimum.phi_star;
  out.perimeter = minimum.perimeter;
  out.point_count = points.size();
  return out;
}

}  // namespace strata
