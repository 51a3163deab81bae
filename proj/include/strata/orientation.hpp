#pragma once

#include <cmath>
#include <optional>

#include "strata/errors.hpp"
#include "strata/geometry.hpp"

namespace strata {

/// Strike / dip angle / dip direction of a plane, degrees.
///
/// Conventions: x is North, the east component of a bearing is -y, z is up.
/// Azimuths are measured clockwise from North; strike follows the right-hand
/// rule (strike = dip direction - 90). Planes within 0.5 degrees of
/// horizontal have no meaningful azimuth, so strike and dip direction are
/// absent for them.
struct PlanarOrientation {
  std::optional<double> strike_deg;
  double dip_deg = 0;
  std::optional<double> dipdir_deg;
  Vec3d source_normal = Vec3d::UnitZ();  // upward, canonical sign
};

inline constexpr double kHorizontalDipCutoffDeg = 0.5;

inline double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0) w += 360.0;
  return w;
}

/// Converts a unit plane normal to planar-orientation angles via its
/// direction cosines. The sign of the normal does not matter.
inline PlanarOrientation orientation_from_normal(const Vec3d& normal) {
  const double norm = normal.norm();
  // Survey tables quote normals to four decimals, so allow 1e-3 slack and
  // renormalize exactly.
  if (!normal.allFinite() || std::abs(norm - 1.0) > 1e-3) {
    throw InvalidArgument("orientation_from_normal: normal must be unit length");
  }
  const Vec3d n = canonical_sign(Vec3d(normal / norm));

  PlanarOrientation out;
  out.source_normal = n;
  out.dip_deg = rad_to_deg(std::acos(std::min(1.0, std::max(-1.0, n.z()))));
  if (out.dip_deg >= kHorizontalDipCutoffDeg) {
    const double dipdir = wrap_degrees(rad_to_deg(std::atan2(-n.y(), n.x())));
    out.dipdir_deg = dipdir;
    out.strike_deg = wrap_degrees(dipdir - 90.0);
  }
  return out;
}

/// Unit normal of the plane with the given dip angle and dip direction,
/// pointing upward. Inverse of orientation_from_normal for non-horizontal
/// planes.
inline Vec3d normal_from_dip(double dip_deg, double dipdir_deg) {
  const double dip = deg_to_rad(dip_deg);
  const double dd = deg_to_rad(dipdir_deg);
  return {std::sin(dip) * std::cos(dd), -std::sin(dip) * std::sin(dd),
          std::cos(dip)};
}

}  // namespace strata
