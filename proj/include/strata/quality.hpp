#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "strata/ground_truth.hpp"
#include "strata/orientation.hpp"

namespace strata {

/// One measured region surface entering the scoring stage.
struct MeasuredSurface {
  int region_id = 0;
  Vec3d normal = Vec3d::UnitZ();
  PlanarOrientation orientation;
};

/// Normalized discrepancy of one angle component in [0, 1].
/// diff = |measured - truth|, wrapped circularly when `circular` is set,
/// then mapped through (diff - p_min) / (p_max - p_min) and clamped.
double z_component(double measured_deg, double truth_deg, double p_min,
                   double p_max, bool circular);

/// Region score: mean of the three component scores (the sum-then-normalize
/// form with P_max = 3 collapses to the mean for nonnegative inputs).
double z_region(double z_strike, double z_dip, double z_dipdir);

/// Run score: sqrt(sum of squared region scores) / n.
double z_run(const std::vector<double>& region_scores);

/// Greedy one-to-one assignment of measured regions to ground-truth
/// surfaces by smallest acute normal angle; pairs beyond
/// max_angle_deg stay unmatched. Returns (measured index, truth index).
std::vector<std::pair<std::size_t, std::size_t>> match_regions(
    const std::vector<MeasuredSurface>& measured,
    const std::vector<GroundTruthSurface>& truth, double max_angle_deg = 30.0);

struct MatchedScore {
  int region_id = 0;
  int truth_id = 0;
  double normal_angle_deg = 0;
  double z_strike = 0;
  double z_dip = 0;
  double z_dipdir = 0;
  double z_region = 0;
};

struct QualityBreakdown {
  std::vector<MatchedScore> matched;
  std::vector<int> unmatched_truth_ids;   // each contributes a region score of 1
  std::vector<int> unmatched_region_ids;  // extra regions, not scored
  double z_run = 0;
};

/// Full scoring of a run: matching, per-component and per-region scores,
/// and the run score over one entry per ground-truth surface.
QualityBreakdown score_run(const std::vector<MeasuredSurface>& measured,
                           const std::vector<GroundTruthSurface>& truth,
                           double max_angle_deg = 30.0);

}  // namespace strata
