#pragma once

#include <filesystem>

#include <json.hpp>

#include "strata/pipeline.hpp"
#include "strata/region_growing.hpp"

namespace strata {

/// Stable region color: a golden-angle hue seeded by the region id.
Rgb region_color(int region_id);

/// Full machine-readable report. Timing fields live under one "timings_s"
/// key so consumers can compare reports net of timing.
nlohmann::json report_to_json(const RunReport& report);

/// Report with "timings_s" and the worker-count echo removed, leaving only
/// content that must be bit-identical across repeats and thread counts.
nlohmann::json report_to_json_without_timings(const RunReport& report);

void write_report_json(const RunReport& report,
                       const std::filesystem::path& path);

/// Loads the measured surfaces of a previously written report, for re-scoring
/// against a ground-truth table.
std::vector<MeasuredSurface> read_measured_surfaces(
    const std::filesystem::path& report_path);

/// Human-readable run summary; angles at 0.1 degree resolution.
void write_summary_text(const RunReport& report,
                        const std::filesystem::path& path);

/// Colored cloud mirroring the segmentation: one color per region,
/// unsegmented points in gray.
void write_segmented_ply(const PointCloud& cloud,
                         const std::vector<VoxelPlane>& planes,
                         const VoxelGrid& grid, const Segmentation& segmentation,
                         const std::filesystem::path& path, bool binary);

/// Region-plane rectangles sampled as colored point grids.
void write_region_planes_ply(const std::vector<RegionMeasurement>& regions,
                             const std::filesystem::path& path, bool binary);

void write_sweep_csv(const std::vector<SweepRow>& rows, SweepFactor factor,
                     const std::filesystem::path& path);

}  // namespace strata
