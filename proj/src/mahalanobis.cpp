#include "strata/mahalanobis.hpp"

#include <cmath>
#include <vector>

#include "strata/errors.hpp"
#include "strata/parallel.hpp"

namespace strata {

MahalanobisModel fit_mahalanobis(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  if (n < 4) {
    throw DegenerateGeometry(
        "fit_mahalanobis: need at least 4 points spanning 3D");
  }

  Vec3d mean = Vec3d::Zero();
  for (const Vec3d& p : cloud.points) mean += p;
  mean /= static_cast<double>(n);

  Mat3d scatter = Mat3d::Zero();
  for (const Vec3d& p : cloud.points) {
    const Vec3d d = p - mean;
    scatter.noalias() += d * d.transpose();
  }

  MahalanobisModel model;
  model.mean = mean;
  model.covariance = scatter / static_cast<double>(n - 1);

  const auto eig = symmetric_eigen3(model.covariance);
  const double lo = eig.eigenvalues(0);
  const double hi = eig.eigenvalues(2);
  if (!(lo > 0) || hi / lo > 1e12) {
    throw DegenerateGeometry(
        "fit_mahalanobis: covariance is rank deficient (points are "
        "collinear or coplanar)");
  }
  model.inverse_covariance = model.covariance.inverse();

  if ((model.covariance * model.inverse_covariance - Mat3d::Identity())
          .cwiseAbs()
          .maxCoeff() > 1e-6) {
    throw DegenerateGeometry(
        "fit_mahalanobis: covariance inverse failed the identity check");
  }
  return model;
}

double mahalanobis_distance(const MahalanobisModel& model, const Vec3d& p) {
  const Vec3d d = p - model.mean;
  const double q = d.dot(model.inverse_covariance * d);
  return std::sqrt(std::max(0.0, q));
}

std::pair<PointCloud, FilterReport> filter_outliers(const PointCloud& cloud,
                                                    double sigma,
                                                    int threads) {
  if (std::isnan(sigma) || sigma <= 0) {
    throw InvalidArgument("filter_outliers: sigma must be positive");
  }

  const MahalanobisModel model = fit_mahalanobis(cloud);

  std::vector<double> distance(cloud.size());
  parallel_for(cloud.size(), threads, [&](std::size_t i) {
    distance[i] = mahalanobis_distance(model, cloud.points[i]);
  });

  std::vector<std::uint32_t> kept;
  kept.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (distance[i] <= sigma) kept.push_back(static_cast<std::uint32_t>(i));
  }

  FilterReport report;
  report.kept = kept.size();
  report.removed = cloud.size() - kept.size();
  report.sigma = sigma;
  return {cloud.take(kept), report};
}

}  // namespace strata
