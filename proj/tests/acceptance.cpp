// Acceptance suite: every release-gating check, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "strata/ground_truth.hpp"
#include "strata/kdtree.hpp"
#include "strata/orientation.hpp"
#include "strata/pipeline.hpp"
#include "strata/quality.hpp"
#include "strata/region_plane.hpp"
#include "strata/report.hpp"
#include "strata/synthetic.hpp"

#include "oracles.hpp"

using namespace strata;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  Criterion(int id_, std::string name_) : id(id_), name(std::move(name_)) {}
  int id;
  std::string name;
  bool pass = false;
  std::string detail;
};

double elapsed_s(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double circular_diff(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return std::min(d, 360.0 - d);
}

char buf[512];

// The criterion-2 scene: 10^4 points per face, seeded, default parameters.
const SyntheticData& acceptance_scene() {
  static const SyntheticData data =
      generate_synthetic(demo_building_scene(10000, 7));
  return data;
}

RunConfig default_config() {
  RunConfig config;
  config.write_outputs = false;
  return config;
}

// ---------------------------------------------------------------------------
// 1. Ground-truth fixture consistency.
// ---------------------------------------------------------------------------
Criterion criterion_1() {
  Criterion c{1, "ground-truth fixture consistency (six surfaces, 0.5 deg)"};
  const auto start = Clock::now();

  const auto surfaces = read_ground_truth(
      std::filesystem::path(STRATA_DATA_DIR) / "sample_ground_truth.csv");
  double worst = 0;
  bool ok = surfaces.size() == 6;
  for (const auto& s : surfaces) {
    const auto po = orientation_from_normal(s.normal);
    if (!po.strike_deg || !po.dipdir_deg) {
      ok = false;
      break;
    }
    worst = std::max({worst, circular_diff(*po.strike_deg, s.strike_deg),
                      std::abs(po.dip_deg - s.dip_deg),
                      circular_diff(*po.dipdir_deg, s.dipdir_deg)});
  }
  const double runtime = elapsed_s(start);
  ok = ok && worst < 0.5 && runtime < 1.0;
  std::snprintf(buf, sizeof(buf),
                "worst component error %.4f deg, runtime %.3f s", worst,
                runtime);
  c.pass = ok;
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------------------
// 2. Synthetic end-to-end at defaults.
// ---------------------------------------------------------------------------
Criterion criterion_2(RunReport& report_out) {
  Criterion c{2, "synthetic end-to-end: 6 matches within 2 deg, z_run <= 0.05"};
  const SyntheticData& data = acceptance_scene();

  const auto start = Clock::now();
  const RunReport report =
      run_pipeline_on_cloud(data.cloud, default_config(), &data.truth);
  const double runtime = elapsed_s(start);
  report_out = report;

  bool ok = report.regions.size() >= 6;
  ok = ok && report.quality.has_value();
  double worst = 0;
  if (ok) {
    const QualityBreakdown& q = *report.quality;
    ok = q.matched.size() == 6 && q.unmatched_truth_ids.empty();
    if (ok) {
      for (const auto& m : q.matched) {
        const auto& region = *std::find_if(
            report.regions.begin(), report.regions.end(), [&](const auto& r) {
              return r.plane.region_id == m.region_id;
            });
        const auto& truth = *std::find_if(
            data.truth.begin(), data.truth.end(),
            [&](const auto& t) { return t.id == m.truth_id; });
        const auto& po = region.orientation;
        if (!po.strike_deg || !po.dipdir_deg) {
          ok = false;
          break;
        }
        worst = std::max({worst, circular_diff(*po.strike_deg, truth.strike_deg),
                          std::abs(po.dip_deg - truth.dip_deg),
                          circular_diff(*po.dipdir_deg, truth.dipdir_deg)});
      }
      ok = ok && worst <= 2.0;
    }
    ok = ok && q.z_run <= 0.05;
  }
  ok = ok && runtime < 60.0;

  std::snprintf(buf, sizeof(buf),
                "regions %zu, matched %zu, worst component %.3f deg, z_run "
                "%.5f, runtime %.2f s",
                report.regions.size(),
                report.quality ? report.quality->matched.size() : 0, worst,
                report.quality ? report.quality->z_run : -1.0, runtime);
  c.pass = ok;
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------------------
// 3. Mahalanobis filter on the planted-outlier scene + affine invariance.
// ---------------------------------------------------------------------------
Criterion criterion_3() {
  Criterion c{3, "filter removes >=95% outliers, keeps >=99% surface, affine-"
                 "invariant"};
  const SyntheticData& data = acceptance_scene();
  const std::size_t surface = data.surface_points;

  const MahalanobisModel model = fit_mahalanobis(data.cloud);
  std::vector<bool> kept(data.cloud.size());
  for (std::size_t i = 0; i < data.cloud.size(); ++i) {
    kept[i] = mahalanobis_distance(model, data.cloud.points[i]) <= 4.0;
  }
  std::size_t surface_kept = 0, outliers_removed = 0;
  for (std::size_t i = 0; i < surface; ++i) surface_kept += kept[i];
  for (std::size_t i = surface; i < data.cloud.size(); ++i) {
    outliers_removed += !kept[i];
  }
  const double outlier_removal =
      data.outlier_points == 0
          ? 1.0
          : double(outliers_removed) / double(data.outlier_points);
  const double surface_retention = double(surface_kept) / double(surface);

  // Random invertible affine map; membership must not change.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Mat3d a;
  do {
    for (int r = 0; r < 3; ++r) {
      for (int col = 0; col < 3; ++col) a(r, col) = unif(rng);
    }
    a += 2.0 * Mat3d::Identity();
  } while (std::abs(a.determinant()) < 0.5);
  const Vec3d shift(3.0, -1.0, 7.0);

  PointCloud mapped;
  mapped.points.reserve(data.cloud.size());
  for (const Vec3d& p : data.cloud.points) mapped.points.push_back(a * p + shift);
  const MahalanobisModel mapped_model = fit_mahalanobis(mapped);
  bool invariant = true;
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    const bool k = mahalanobis_distance(mapped_model, mapped.points[i]) <= 4.0;
    if (k != kept[i]) {
      invariant = false;
      break;
    }
  }

  c.pass = outlier_removal >= 0.95 && surface_retention >= 0.99 && invariant;
  std::snprintf(buf, sizeof(buf),
                "outlier removal %.2f%%, surface retention %.3f%%, affine "
                "partition %s",
                100 * outlier_removal, 100 * surface_retention,
                invariant ? "identical" : "CHANGED");
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------------------
// 4. Minimum-perimeter optimizer vs dense grid + known rotations.
// ---------------------------------------------------------------------------
Criterion criterion_4() {
  Criterion c{4, "perimeter search beats 0.01-deg grid; recovers rotations"};
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> count(8, 200);

  double worst_excess = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec2d> uv;
    const int n = count(rng);
    const double sx = 0.5 + 2.0 * std::abs(unif(rng));
    const double sy = 0.5 + 2.0 * std::abs(unif(rng));
    for (int i = 0; i < n; ++i) {
      uv.emplace_back(sx * unif(rng), sy * unif(rng));
    }
    const auto minimum = minimize_perimeter(uv);
    const double grid_best = oracles::grid_min_perimeter(
        [&uv](double phi) { return perimeter_at(uv, phi); }, 0.01);
    worst_excess = std::max(worst_excess, minimum.perimeter - grid_best);
  }

  double worst_phi_err = 0;
  std::vector<Vec2d> rect;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 10; ++j) {
      rect.emplace_back(-1.0 + 0.1 * i, -0.5 + 0.1 * j);
    }
  }
  for (int step = 1; step <= 17; ++step) {
    const double phi0 = deg_to_rad(5.0 * step);
    const double cos0 = std::cos(phi0), sin0 = std::sin(phi0);
    std::vector<Vec2d> rotated;
    rotated.reserve(rect.size());
    for (const Vec2d& p : rect) {
      rotated.emplace_back(cos0 * p.x() - sin0 * p.y(),
                           sin0 * p.x() + cos0 * p.y());
    }
    const auto minimum = minimize_perimeter(rotated);
    // phi* == -phi0 (mod pi/2on)
    double err = std::fmod(std::abs(minimum.phi_star + phi0), kPi / 2);
    err = std::min(err, kPi / 2 - err);
    worst_phi_err = std::max(worst_phi_err, err);
  }

  c.pass = worst_excess <= 1e-6 && worst_phi_err < 1e-3;
  std::snprintf(buf, sizeof(buf),
                "worst excess over grid %.2e, worst phi error %.2e rad",
                worst_excess, worst_phi_err);
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------------------
// 5. kNN index equivalence against the exhaustive scan.
// ---------------------------------------------------------------------------
Criterion criterion_5() {
  Criterion c{5, "kNN equals O(n^2) scan, 50 instances, k in {1,5,20}"};
  std::mt19937_64 seed_rng(505);
  bool ok = true;
  std::size_t checked = 0;
  for (int instance = 0; instance < 50 && ok; ++instance) {
    std::mt19937_64 rng(seed_rng());
    std::uniform_int_distribution<std::size_t> size_dist(50, 2000);
    std::uniform_real_distribution<double> unif(-100.0, 100.0);
    const std::size_t n = instance < 5 ? 2000 : size_dist(rng);

    std::vector<Vec3d> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      pts.emplace_back(unif(rng), unif(rng), unif(rng));
    }
    std::vector<VoxelPlane> planes(n);
    for (std::size_t i = 0; i < n; ++i) planes[i].centroid = pts[i];

    for (const std::size_t k : {std::size_t{1}, std::size_t{5},
                                std::size_t{20}}) {
      const auto table = knn_index(planes, k, 4);
      // Exhaustive verification on a deterministic subset of queries.
      for (std::size_t i = 0; i < n && ok; i += 17) {
        if (table[i] != oracles::brute_force_knn(
                            pts, pts[i], k, static_cast<std::int64_t>(i))) {
          ok = false;
        }
        ++checked;
      }
    }
  }
  c.pass = ok;
  std::snprintf(buf, sizeof(buf), "%zu query/k combinations verified%s",
                checked, ok ? "" : ", MISMATCH found");
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------------------
// 6. Quality-metric algebra.
// ---------------------------------------------------------------------------
Criterion criterion_6() {
  Criterion c{6, "quality metric algebra matches hand-computed values"};
  bool ok = true;

  ok = ok && std::abs(z_component(123.0, 87.0, 0, 360, true) - 0.1) < 1e-12;
  ok = ok && z_component(87.0, 87.0, 0, 360, true) == 0.0;
  ok = ok && std::abs(z_run({0.3}) - 0.3) < 1e-12;
  ok = ok && z_run({0, 0, 0, 0}) == 0.0;
  ok = ok && std::abs(z_region(0, 0, 0)) < 1e-12;

  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = unif(rng), b = unif(rng), cc = unif(rng);
    const double sum = a + b + cc;
    const double literal = std::sqrt(sum * sum) / 3.0;
    worst = std::max(worst, std::abs(z_region(a, b, cc) - literal));
  }
  ok = ok && worst < 1e-12;

  c.pass = ok;
  std::snprintf(buf, sizeof(buf),
                "frozen values exact, mean-vs-literal worst diff %.2e", worst);
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------------------
// 7. Sweep trends: theta quality curve and zeta runtime curve.
// ---------------------------------------------------------------------------
Criterion criterion_7() {
  Criterion c{7, "theta sweep optimum <= 9 deg and z(30) above it; zeta "
                 "runtime non-increasing"};
  const SyntheticData& data = acceptance_scene();
  RunConfig base = default_config();

  const auto theta_rows = run_sweep_on_cloud(data.cloud, &data.truth, base,
                                             SweepFactor::Theta, 0, 30, 3);
  bool ok = theta_rows.size() == 11;
  double best_z = 1e9, best_theta = -1, z30 = -1;
  if (ok) {
    for (const auto& row : theta_rows) {
      ok = ok && row.ok && row.z_run.has_value();
      if (!ok) break;
      ok = ok && row.region_growing_s <= row.total_s + 1e-9;
      if (*row.z_run < best_z) {
        best_z = *row.z_run;
        best_theta = row.value;
      }
      if (row.value == 30.0) z30 = *row.z_run;
    }
    ok = ok && best_theta <= 9.0 && z30 > best_z;
  }

  // Runtime trend on a denser cloud so wall times dominate scheduler noise.
  // Per attempt: three sweep repetitions, per-row minimum (interference only
  // ever adds time), then the band check below. A loaded machine can distort
  // a whole measurement window, so up to five attempts are made; a genuine
  // trend regression fails every one of them.
  const SyntheticData timing_data =
      generate_synthetic(demo_building_scene(60000, 7));
  run_pipeline_on_cloud(timing_data.cloud, base, nullptr);  // warm caches

  bool monotone = false;
  bool rows_ok = true;
  std::vector<double> row_total;
  int attempts = 0;
  while (ok && rows_ok && !monotone && attempts < 5) {
    ++attempts;
    std::vector<std::vector<SweepRow>> zeta_reps;
    for (int rep = 0; rep < 3; ++rep) {
      zeta_reps.push_back(run_sweep_on_cloud(timing_data.cloud, nullptr, base,
                                             SweepFactor::Zeta, 0.01, 0.07,
                                             0.006));
    }
    rows_ok = zeta_reps.front().size() == 11;
    row_total.assign(zeta_reps.front().size(), 0.0);
    for (std::size_t i = 0; rows_ok && i < row_total.size(); ++i) {
      double best = std::numeric_limits<double>::max();
      for (const auto& rep : zeta_reps) {
        rows_ok = rows_ok && rep[i].ok &&
                  rep[i].region_growing_s <= rep[i].total_s + 1e-9;
        best = std::min(best, rep[i].total_s);
      }
      row_total[i] = best;
    }
    if (!rows_ok) break;

    // Non-increasing within a +-10% noise band: the times must fit inside a
    // +-10% tube (plus 1 ms measurement slack) around some non-increasing
    // reference curve. Greedy feasibility: keep the reference as high as the
    // tube allows and check it never needs to rise again.
    constexpr double kSlack = 0.001;
    double reference = std::numeric_limits<double>::max();
    monotone = true;
    for (const double t : row_total) {
      reference = std::min(reference, (t + kSlack) / 0.9);
      if (reference < (t - kSlack) / 1.1) {
        monotone = false;
        break;
      }
    }
  }
  ok = ok && rows_ok && monotone;

  c.pass = ok;
  std::string series;
  for (const double t : row_total) {
    char ms[16];
    std::snprintf(ms, sizeof(ms), "%.0f ", 1000 * t);
    series += ms;
  }
  std::snprintf(
      buf, sizeof(buf),
      "theta optimum %.0f deg (z %.4f), z(30) %.4f; zeta ms [%s] %s "
      "(attempt %d)",
      best_theta, best_z, z30, series.c_str(),
      monotone ? "non-increasing in band" : "NOT monotone", attempts);
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------------------
// 8. Determinism across repeats and thread counts.
// ---------------------------------------------------------------------------
Criterion criterion_8() {
  Criterion c{8, "non-timing report identical over 3 runs x {1,4,8} threads"};
  const SyntheticData& data = acceptance_scene();

  std::string reference;
  bool ok = true;
  for (const int threads : {1, 4, 8}) {
    for (int repeat = 0; repeat < 3 && ok; ++repeat) {
      RunConfig config = default_config();
      config.threads = threads;
      const auto json = report_to_json_without_timings(
          run_pipeline_on_cloud(data.cloud, config, &data.truth));
      const std::string dump = json.dump();
      if (reference.empty()) {
        reference = dump;
      } else if (dump != reference) {
        ok = false;
      }
    }
  }
  c.pass = ok;
  std::snprintf(buf, sizeof(buf), "9 runs compared%s",
                ok ? ", all identical" : ", DIVERGENCE found");
  c.detail = buf;
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  RunReport report;

  results.push_back(criterion_1());
  results.push_back(criterion_2(report));
  results.push_back(criterion_3());
  results.push_back(criterion_4());
  results.push_back(criterion_5());
  results.push_back(criterion_6());
  results.push_back(criterion_7());
  results.push_back(criterion_8());

  int failures = 0;
  for (const Criterion& c : results) {
    std::printf("[%s] criterion %d: %s (%s)\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.detail.c_str());
    failures += c.pass ? 0 : 1;
  }
  std::printf("%d/%zu acceptance criteria passed\n",
              static_cast<int>(results.size()) - failures, results.size());
  return failures == 0 ? 0 : 1;
}
