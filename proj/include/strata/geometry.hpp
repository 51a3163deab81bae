#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "strata/errors.hpp"

namespace strata {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;
using Vec2d = Eigen::Vector2d;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Axis-aligned bounding box, min <= max componentwise.
struct Aabb {
  Vec3d min = Vec3d::Zero();
  Vec3d max = Vec3d::Zero();

  Vec3d extent() const { return max - min; }
  double longest_extent() const { return extent().maxCoeff(); }

  /// Grows every side by `rel` times the longest extent.
  Aabb expanded_relative(double rel) const {
    const double pad = rel * longest_extent();
    return {min.array() - pad, max.array() + pad};
  }

  bool contains(const Vec3d& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
};

/// Skew-symmetric cross-product matrix: skew(a) * b == a.cross(b).
template <typename Derived>
Mat3<typename Derived::Scalar> skew(const Eigen::MatrixBase<Derived>& av) {
  using Scalar = typename Derived::Scalar;
  const Vec3<Scalar> a = av;
  Mat3<Scalar> k;
  k << Scalar(0), -a.z(), a.y(),
       a.z(), Scalar(0), -a.x(),
      -a.y(), a.x(), Scalar(0);
  return k;
}

/// Rotation about a unit axis by `angle` radians,
/// R = I + sin(angle) K + (1 - cos(angle)) K^2 with K = skew(axis).
template <typename Derived>
Mat3<typename Derived::Scalar> rodrigues_rotation(
    const Eigen::MatrixBase<Derived>& axis_expr,
    typename Derived::Scalar angle) {
  using Scalar = typename Derived::Scalar;
  const Vec3<Scalar> axis = axis_expr;
  if (!std::isfinite(static_cast<double>(angle))) {
    throw InvalidArgument("rodrigues_rotation: angle must be finite");
  }
  if (std::abs(static_cast<double>(axis.norm()) - 1.0) > 1e-6) {
    throw InvalidArgument("rodrigues_rotation: axis must be unit length");
  }
  const Mat3<Scalar> k = skew(axis);
  return Mat3<Scalar>::Identity() + std::sin(angle) * k +
         (Scalar(1) - std::cos(angle)) * (k * k);
}

/// Fixes the sign of a direction vector: z >= 0, ties broken toward +x, then +y.
/// Deterministic, so repeated decompositions of one matrix agree bitwise.
template <typename Derived>
Vec3<typename Derived::Scalar> canonical_sign(
    const Eigen::MatrixBase<Derived>& vv) {
  using Scalar = typename Derived::Scalar;
  const Vec3<Scalar> v = vv;
  if (v.z() < Scalar(0)) return -v;
  if (v.z() > Scalar(0)) return v;
  if (v.x() < Scalar(0)) return -v;
  if (v.x() > Scalar(0)) return v;
  if (v.y() < Scalar(0)) return -v;
  return v;
}

/// Acute (sign-insensitive) angle between two unit directions, radians.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar acute_angle(const Eigen::MatrixBase<DerivedA>& a,
                                      const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Scalar d = std::min(Scalar(1), std::abs(a.dot(b)));
  return std::acos(d);
}

template <typename Scalar>
struct SymmetricEigen3 {
  Vec3<Scalar> eigenvalues;   // ascending
  Mat3<Scalar> eigenvectors;  // orthonormal columns, eigenvectors.col(i) <-> eigenvalues(i)
};

namespace detail {

template <typename Scalar>
bool is_symmetric(const Mat3<Scalar>& a, Scalar rel_tol) {
  const Scalar scale = std::max(Scalar(1), a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

}  // namespace detail

/// Eigendecomposition of a symmetric 3x3 matrix by cyclic Jacobi rotations.
/// Converges quadratically; at most a handful of sweeps for 3x3 input.
template <typename Scalar>
SymmetricEigen3<Scalar> symmetric_eigen3(const Mat3<Scalar>& input) {
  Mat3<Scalar> a = Scalar(0.5) * (input + input.transpose());
  Mat3<Scalar> v = Mat3<Scalar>::Identity();

  const Scalar frob = a.norm();
  const Scalar off_tol =
      std::numeric_limits<Scalar>::epsilon() * std::max(frob, Scalar(1e-300));

  constexpr int kMaxSweeps = 32;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const Scalar off = std::sqrt(a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) +
                                 a(1, 2) * a(1, 2));
    if (off <= off_tol) break;

    constexpr std::array<std::pair<int, int>, 3> kPairs{
        {{0, 1}, {0, 2}, {1, 2}}};
    for (const auto& [p, q] : kPairs) {
      const Scalar apq = a(p, q);
      if (apq == Scalar(0)) continue;

      const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
      const Scalar sign = theta >= Scalar(0) ? Scalar(1) : Scalar(-1);
      const Scalar t =
          sign / (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
      const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
      const Scalar s = t * c;
      const Scalar tau = s / (Scalar(1) + c);

      a(p, p) -= t * apq;
      a(q, q) += t * apq;
      a(p, q) = a(q, p) = Scalar(0);
      for (int r = 0; r < 3; ++r) {
        if (r == p || r == q) continue;
        const Scalar arp = a(r, p);
        const Scalar arq = a(r, q);
        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
      }
      for (int r = 0; r < 3; ++r) {
        const Scalar vrp = v(r, p);
        const Scalar vrq = v(r, q);
        v(r, p) = vrp - s * (vrq + tau * vrp);
        v(r, q) = vrq + s * (vrp - tau * vrq);
      }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    if (a(lhs, lhs) != a(rhs, rhs)) return a(lhs, lhs) < a(rhs, rhs);
    return lhs < rhs;
  });

  SymmetricEigen3<Scalar> out;
  for (int i = 0; i < 3; ++i) {
    out.eigenvalues(i) = a(order[i], order[i]);
    out.eigenvectors.col(i) = v.col(order[i]);
  }
  return out;
}

namespace detail {

template <typename Scalar>
void check_symmetric_input(const Mat3<Scalar>& a, const char* who) {
  if (!a.allFinite()) {
    throw InvalidArgument(std::string(who) + ": matrix must be finite");
  }
  if (!is_symmetric(a, Scalar(1e-9))) {
    throw InvalidArgument(std::string(who) + ": matrix must be symmetric");
  }
}

}  // namespace detail

/// Eigenpair with the minimal eigenvalue; eigenvector sign is canonical.
template <typename Scalar>
std::pair<Scalar, Vec3<Scalar>> smallest_eigenvector(const Mat3<Scalar>& a) {
  detail::check_symmetric_input(a, "smallest_eigenvector");
  const auto eig = symmetric_eigen3(a);
  return {eig.eigenvalues(0),
          canonical_sign(Vec3<Scalar>(eig.eigenvectors.col(0)))};
}

/// Eigenpair with the maximal eigenvalue; eigenvector sign is canonical.
template <typename Scalar>
std::pair<Scalar, Vec3<Scalar>> largest_eigenvector(const Mat3<Scalar>& a) {
  detail::check_symmetric_input(a, "largest_eigenvector");
  const auto eig = symmetric_eigen3(a);
  return {eig.eigenvalues(2),
          canonical_sign(Vec3<Scalar>(eig.eigenvectors.col(2)))};
}

}  // namespace strata
