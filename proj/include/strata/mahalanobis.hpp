#pragma once

#include <cstddef>
#include <utility>

#include "strata/point_cloud.hpp"

namespace strata {

/// Global covariance model of a cloud for Mahalanobis distances.
struct MahalanobisModel {
  Vec3d mean = Vec3d::Zero();
  Mat3d covariance = Mat3d::Identity();          // sample covariance, n - 1
  Mat3d inverse_covariance = Mat3d::Identity();
};

struct FilterReport {
  std::size_t kept = 0;
  std::size_t removed = 0;
  double sigma = 0;
};

/// Fits mean and sample covariance. Needs at least 4 points that span 3D;
/// a covariance condition number beyond 1e12 counts as degenerate.
MahalanobisModel fit_mahalanobis(const PointCloud& cloud);

/// sqrt((p - mean)^T H^-1 (p - mean)), in standard-deviation units.
double mahalanobis_distance(const MahalanobisModel& model, const Vec3d& p);

/// Keeps exactly the points within `sigma` standard deviations of the model
/// fitted to the cloud. Order and colors of kept points are preserved.
/// Membership is invariant under invertible affine transforms of the cloud.
std::pair<PointCloud, FilterReport> filter_outliers(const PointCloud& cloud,
                                                    double sigma,
                                                    int threads = 1);

}  // namespace strata
