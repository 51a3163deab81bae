#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strata/ground_truth.hpp"
#include "strata/mahalanobis.hpp"
#include "strata/quality.hpp"
#include "strata/region_plane.hpp"

namespace strata {

inline constexpr int kReportSchemaVersion = 1;

struct RunConfig {
  std::string input;
  std::optional<std::string> truth;
  std::string out_dir = ".";

  double zeta = 0.04;
  double theta_deg = 6.0;
  double psi = 0.1;
  std::size_t k = 7;
  double sigma = 4.0;
  std::size_t min_points = 3;
  std::size_t min_region_size = 10;
  bool psi_relative = false;      // interpret psi in voxel-edge units
  bool weighted_normals = true;   // weight region normals by voxel point count

  std::uint64_t rng_seed = 0;
  int threads = 1;
  bool binary_ply = false;
  bool write_outputs = true;
};

/// Throws InvalidArgument for out-of-range parameters.
void validate(const RunConfig& config);

struct StageTimings {
  double filter_s = 0;
  double voxel_fit_s = 0;
  double region_growing_s = 0;
  double region_planes_s = 0;
  double total_s = 0;
};

struct RegionMeasurement {
  RegionPlane plane;
  PlanarOrientation orientation;
  std::size_t member_planes = 0;
};

struct RunReport {
  int schema_version = kReportSchemaVersion;
  RunConfig config;
  StageTimings timings;
  FilterReport filter;
  VoxelFitStats voxel_stats;
  std::array<std::int32_t, 3> grid_dims{0, 0, 0};
  double voxel_edge_length = 0;
  std::size_t plane_count = 0;
  std::size_t unsegmented_planes = 0;
  std::vector<RegionMeasurement> regions;
  std::optional<QualityBreakdown> quality;
};

/// Full pipeline over an in-memory cloud: filter, voxel fit, region growing,
/// region planes, orientations, optional scoring. No files are touched.
RunReport run_pipeline_on_cloud(const PointCloud& cloud, const RunConfig& config,
                                const std::vector<GroundTruthSurface>* truth);

/// File-based entry point: reads the input PLY (and truth CSV when given),
/// runs the pipeline, and writes report.json, summary.txt, segmented.ply and
/// region_planes.ply into out_dir unless outputs are disabled.
RunReport run_pipeline(const RunConfig& config);

enum class SweepFactor { Zeta, Theta, Psi, K };

const char* sweep_factor_name(SweepFactor factor);
SweepFactor parse_sweep_factor(const std::string& name);

struct SweepRow {
  double value = 0;
  bool ok = false;
  std::string error;
  double region_growing_s = 0;
  double total_s = 0;
  std::optional<double> z_run;
  std::size_t region_count = 0;
};

/// One pipeline run per step value, sequentially (timings stay honest).
/// Failed runs become failed rows; the sweep continues.
std::vector<SweepRow> run_sweep_on_cloud(
    const PointCloud& cloud, const std::vector<GroundTruthSurface>* truth,
    const RunConfig& base, SweepFactor factor, double start, double end,
    double step);

/// File-based sweep; also writes sweep_<factor>.csv into out_dir.
std::vector<SweepRow> run_sweep(const RunConfig& base, SweepFactor factor,
                                double start, double end, double step);

}  // namespace strata
