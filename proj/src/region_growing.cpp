#include "strata/region_growing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "strata/errors.hpp"
#include "strata/kdtree.hpp"

namespace strata {

Segmentation grow_regions(const std::vector<VoxelPlane>& planes,
                          const GrowParams& params, int threads) {
  if (params.theta_deg < 0 || params.theta_deg > 90) {
    throw InvalidArgument("grow_regions: theta must be in [0, 90] degrees");
  }
  if (!(params.psi >= 0)) {
    throw InvalidArgument("grow_regions: psi must be nonnegative");
  }
  if (params.k < 1) {
    throw InvalidArgument("grow_regions: k must be at least 1");
  }

  Segmentation out;
  if (planes.empty()) return out;

  const auto neighbors = knn_index(planes, params.k, threads);
  const double cos_theta = std::cos(deg_to_rad(params.theta_deg));

  std::vector<std::uint32_t> seed_order(planes.size());
  std::iota(seed_order.begin(), seed_order.end(), 0u);
  std::sort(seed_order.begin(), seed_order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (planes[a].residual != planes[b].residual) {
                return planes[a].residual < planes[b].residual;
              }
              return a < b;
            });

  std::vector<bool> assigned(planes.size(), false);

  for (const std::uint32_t start : seed_order) {
    if (assigned[start]) continue;

    Region region;
    region.members.push_back(start);
    region.admitted_by.push_back(start);
    assigned[start] = true;

    std::deque<std::uint32_t> queue{start};
    while (!queue.empty()) {
      const std::uint32_t seed = queue.front();
      queue.pop_front();
      region.seed_history.push_back(seed);

      const Vec3d& seed_normal = planes[seed].normal;
      const Vec3d& seed_centroid = planes[seed].centroid;
      for (const std::uint32_t nb : neighbors[seed]) {
        if (assigned[nb]) continue;
        if (std::abs(planes[nb].normal.dot(seed_normal)) < cos_theta) continue;

        assigned[nb] = true;
        region.members.push_back(nb);
        region.admitted_by.push_back(seed);

        const double offset =
            std::abs((planes[nb].centroid - seed_centroid).dot(seed_normal));
        if (offset <= params.psi) queue.push_back(nb);
      }
    }

    if (region.members.size() >= params.min_region_size) {
      out.regions.push_back(std::move(region));
    } else {
      out.unsegmented.insert(out.unsegmented.end(), region.members.begin(),
                             region.members.end());
    }
  }

  std::sort(out.regions.begin(), out.regions.end(),
            [](const Region& a, const Region& b) {
              if (a.members.size() != b.members.size()) {
                return a.members.size() > b.members.size();
              }
              return a.members.front() < b.members.front();
            });
  for (std::size_t i = 0; i < out.regions.size(); ++i) {
    out.regions[i].id = static_cast<int>(i) + 1;
  }
  std::sort(out.unsegmented.begin(), out.unsegmented.end());
  return out;
}

}  // namespace strata
