#include "strata/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <string>
#include <utility>

#include "strata/errors.hpp"
#include "strata/parallel.hpp"
#include "strata/ply_io.hpp"
#include "strata/report.hpp"

namespace strata {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Runs one stage, records its wall time, and prefixes any failure with the
/// stage name so pipeline aborts identify where they happened.
template <typename F>
auto timed_stage(const char* name, double& elapsed_s, F&& f) {
  const auto start = Clock::now();
  auto tag = [&](const auto& error) {
    return std::string("[") + name + "] " + error.what();
  };
  try {
    auto result = f();
    elapsed_s = seconds_since(start);
    return result;
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(tag(e));
  } catch (const DegenerateGeometry& e) {
    throw DegenerateGeometry(tag(e));
  } catch (const ParseError&) {
    throw;  // already carries file context
  } catch (const SchemaError&) {
    throw;
  } catch (const ValidationError&) {
    throw;
  } catch (const IoError& e) {
    throw IoError(tag(e));
  }
}

}  // namespace

void validate(const RunConfig& config) {
  if (!(config.zeta > 0) || config.zeta > 1) {
    throw InvalidArgument("config: zeta must be in (0, 1]");
  }
  if (config.theta_deg < 0 || config.theta_deg > 90 ||
      !std::isfinite(config.theta_deg)) {
    throw InvalidArgument("config: theta must be in [0, 90] degrees");
  }
  if (!(config.psi >= 0)) {
    throw InvalidArgument("config: psi must be nonnegative");
  }
  if (config.k < 1) {
    throw InvalidArgument("config: k must be at least 1");
  }
  if (std::isnan(config.sigma) || config.sigma <= 0) {
    throw InvalidArgument("config: sigma must be positive");
  }
  if (config.threads < 1) {
    throw InvalidArgument("config: threads must be at least 1");
  }
}

RunReport run_pipeline_on_cloud(const PointCloud& cloud, const RunConfig& config,
                                const std::vector<GroundTruthSurface>* truth) {
  validate(config);

  RunReport report;
  report.config = config;
  const auto total_start = Clock::now();

  PointCloud filtered;
  std::tie(filtered, report.filter) =
      timed_stage("filter", report.timings.filter_s, [&] {
        return filter_outliers(cloud, config.sigma, config.threads);
      });

  VoxelGrid grid;
  std::vector<VoxelPlane> planes;
  std::tie(grid, planes) = timed_stage(
      "voxel_fit", report.timings.voxel_fit_s,
      [&]() -> std::pair<VoxelGrid, std::vector<VoxelPlane>> {
        VoxelGrid g = build_grid(filtered, config.zeta);
        auto p = fit_all(g, filtered,
                         static_cast<std::uint32_t>(config.min_points),
                         &report.voxel_stats, config.threads);
        return {std::move(g), std::move(p)};
      });
  report.grid_dims = grid.dims;
  report.voxel_edge_length = grid.edge_length;
  report.plane_count = planes.size();

  const Segmentation segmentation =
      timed_stage("region_growing", report.timings.region_growing_s, [&] {
        GrowParams params;
        params.theta_deg = config.theta_deg;
        params.psi =
            config.psi_relative ? config.psi * grid.edge_length : config.psi;
        params.k = config.k;
        params.min_region_size = config.min_region_size;
        if (planes.empty()) return Segmentation{};
        return grow_regions(planes, params, config.threads);
      });
  report.unsegmented_planes = segmentation.unsegmented.size();

  report.regions =
      timed_stage("region_planes", report.timings.region_planes_s, [&] {
        std::vector<RegionMeasurement> regions(segmentation.regions.size());
        parallel_for(segmentation.regions.size(), config.threads,
                     [&](std::size_t i) {
                       RegionMeasurement& m = regions[i];
                       m.plane = build_region_plane(
                           segmentation.regions[i], planes, grid, filtered,
                           config.weighted_normals);
                       m.orientation = orientation_from_normal(m.plane.normal);
                       m.member_planes = segmentation.regions[i].members.size();
                     });
        return regions;
      });

  if (truth != nullptr && !truth->empty()) {
    std::vector<MeasuredSurface> measured;
    measured.reserve(report.regions.size());
    for (const auto& r : report.regions) {
      measured.push_back({r.plane.region_id, r.plane.normal, r.orientation});
    }
    if (!measured.empty()) {
      report.quality = score_run(measured, *truth);
    } else {
      // Nothing was measured: every truth surface stays unmatched.
      QualityBreakdown q;
      std::vector<double> scores;
      for (const auto& t : *truth) {
        q.unmatched_truth_ids.push_back(t.id);
        scores.push_back(1.0);
      }
      q.z_run = z_run(scores);
      report.quality = q;
    }
  }

  report.timings.total_s = seconds_since(total_start);

  if (config.write_outputs) {
    const std::filesystem::path out_dir(config.out_dir);
    std::filesystem::create_directories(out_dir);
    write_report_json(report, out_dir / "report.json");
    write_summary_text(report, out_dir / "summary.txt");
    write_segmented_ply(filtered, planes, grid, segmentation,
                        out_dir / "segmented.ply", config.binary_ply);
    write_region_planes_ply(report.regions, out_dir / "region_planes.ply",
                            config.binary_ply);
  }
  return report;
}

RunReport run_pipeline(const RunConfig& config) {
  validate(config);
  const PointCloud cloud = read_ply(config.input);

  std::vector<GroundTruthSurface> truth;
  if (config.truth) {
    truth = read_ground_truth(*config.truth);
  }
  return run_pipeline_on_cloud(cloud, config,
                               config.truth ? &truth : nullptr);
}

const char* sweep_factor_name(SweepFactor factor) {
  switch (factor) {
    case SweepFactor::Zeta: return "zeta";
    case SweepFactor::Theta: return "theta";
    case SweepFactor::Psi: return "psi";
    case SweepFactor::K: return "k";
  }
  return "unknown";
}

SweepFactor parse_sweep_factor(const std::string& name) {
  if (name == "zeta") return SweepFactor::Zeta;
  if (name == "theta") return SweepFactor::Theta;
  if (name == "psi") return SweepFactor::Psi;
  if (name == "k") return SweepFactor::K;
  throw InvalidArgument("unknown sweep factor '" + name +
                        "' (expected zeta, theta, psi or k)");
}

std::vector<SweepRow> run_sweep_on_cloud(
    const PointCloud& cloud, const std::vector<GroundTruthSurface>* truth,
    const RunConfig& base, SweepFactor factor, double start, double end,
    double step) {
  if (!std::isfinite(start) || !std::isfinite(end) || !std::isfinite(step) ||
      step <= 0) {
    throw InvalidArgument("sweep: step must be positive and finite");
  }
  if (end < start) {
    throw InvalidArgument("sweep: end must not precede start");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  if (count > 100000) {
    throw InvalidArgument("sweep: too many steps");
  }

  std::vector<SweepRow> rows;
  rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double value = start + static_cast<double>(i) * step;
    RunConfig config = base;
    config.write_outputs = false;
    switch (factor) {
      case SweepFactor::Zeta: config.zeta = value; break;
      case SweepFactor::Theta: config.theta_deg = value; break;
      case SweepFactor::Psi: config.psi = value; break;
      case SweepFactor::K:
        config.k = static_cast<std::size_t>(std::llround(value));
        break;
    }

    SweepRow row;
    row.value = value;
    try {
      const RunReport report = run_pipeline_on_cloud(cloud, config, truth);
      row.ok = true;
      row.region_growing_s = report.timings.region_growing_s;
      row.total_s = report.timings.total_s;
      row.region_count = report.regions.size();
      if (report.quality) row.z_run = report.quality->z_run;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, SweepFactor factor,
                                double start, double end, double step) {
  validate(base);
  const PointCloud cloud = read_ply(base.input);
  std::vector<GroundTruthSurface> truth;
  if (base.truth) {
    truth = read_ground_truth(*base.truth);
  }
  auto rows = run_sweep_on_cloud(cloud, base.truth ? &truth : nullptr, base,
                                 factor, start, end, step);

  const std::filesystem::path out_dir(base.out_dir);
  std::filesystem::create_directories(out_dir);
  write_sweep_csv(rows, factor,
                  out_dir / (std::string("sweep_") + sweep_factor_name(factor) +
                             ".csv"));
  return rows;
}

}  // namespace strata
