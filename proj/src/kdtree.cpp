#include "strata/kdtree.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "strata/errors.hpp"
#include "strata/parallel.hpp"

namespace strata {

namespace {

using Candidate = std::pair<double, std::uint32_t>;  // (squared distance, index)

}  // namespace

struct KdTree3::BestSet {
  std::size_t capacity;
  std::vector<Candidate> heap;  // max-heap, worst candidate at front

  bool full() const { return heap.size() == capacity; }
  double worst_dist2() const { return heap.front().first; }

  void offer(const Candidate& c) {
    if (heap.size() < capacity) {
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end());
    } else if (c < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = c;
      std::push_heap(heap.begin(), heap.end());
    }
  }
};

KdTree3::KdTree3(std::vector<Vec3d> points) : points_(std::move(points)) {
  const std::size_t n = points_.size();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
  axis_.assign(n, 0);

  // Iterative build over [lo, hi) segments; split axis is the widest extent
  // of the segment, median chosen under a (coordinate, index) total order so
  // the layout is fully deterministic.
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  if (n > 0) stack.emplace_back(0, n);
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi - lo <= 1) continue;

    Vec3d mn = points_[order_[lo]];
    Vec3d mx = mn;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      mn = mn.cwiseMin(points_[order_[i]]);
      mx = mx.cwiseMax(points_[order_[i]]);
    }
    int axis = 0;
    (mx - mn).maxCoeff(&axis);

    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + lo, order_.begin() + mid,
                     order_.begin() + hi,
                     [&](std::uint32_t a, std::uint32_t b) {
                       const double pa = points_[a](axis);
                       const double pb = points_[b](axis);
                       if (pa != pb) return pa < pb;
                       return a < b;
                     });
    axis_[mid] = static_cast<std::uint8_t>(axis);
    stack.emplace_back(lo, mid);
    stack.emplace_back(mid + 1, hi);
  }
}

void KdTree3::search(std::size_t lo, std::size_t hi, const Vec3d& query,
                     std::optional<std::uint32_t> exclude,
                     BestSet& best) const {
  if (lo >= hi) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  const std::uint32_t idx = order_[mid];
  const int axis = axis_[mid];

  if (!exclude || *exclude != idx) {
    best.offer({(points_[idx] - query).squaredNorm(), idx});
  }
  if (hi - lo == 1) return;

  const double delta = query(axis) - points_[idx](axis);
  const std::size_t near_lo = delta < 0 ? lo : mid + 1;
  const std::size_t near_hi = delta < 0 ? mid : hi;
  const std::size_t far_lo = delta < 0 ? mid + 1 : lo;
  const std::size_t far_hi = delta < 0 ? hi : mid;

  search(near_lo, near_hi, query, exclude, best);
  // The far side may still hold an equal-distance candidate with a lower
  // index, hence <= rather than <.
  if (!best.full() || delta * delta <= best.worst_dist2()) {
    search(far_lo, far_hi, query, exclude, best);
  }
}

std::vector<std::uint32_t> KdTree3::nearest(
    const Vec3d& query, std::size_t k,
    std::optional<std::uint32_t> exclude) const {
  if (k == 0 || points_.empty()) return {};

  BestSet best{k, {}};
  best.heap.reserve(std::min(k, points_.size()));
  search(0, points_.size(), query, exclude, best);

  std::sort(best.heap.begin(), best.heap.end());
  std::vector<std::uint32_t> out;
  out.reserve(best.heap.size());
  for (const auto& [d2, idx] : best.heap) out.push_back(idx);
  return out;
}

std::vector<std::vector<std::uint32_t>> knn_index(
    const std::vector<VoxelPlane>& planes, std::size_t k, int threads) {
  if (planes.empty()) {
    throw InvalidArgument("knn_index: plane list is empty");
  }
  if (k < 1) {
    throw InvalidArgument("knn_index: k must be at least 1");
  }

  std::vector<Vec3d> centroids;
  centroids.reserve(planes.size());
  for (const auto& plane : planes) centroids.push_back(plane.centroid);
  const KdTree3 tree(std::move(centroids));

  std::vector<std::vector<std::uint32_t>> neighbors(planes.size());
  parallel_for(planes.size(), threads, [&](std::size_t i) {
    neighbors[i] =
        tree.nearest(planes[i].centroid, k, static_cast<std::uint32_t>(i));
  });
  return neighbors;
}

}  // namespace strata
