#include "strata/quality.hpp"

#include <algorithm>
#include <cmath>

#include "strata/errors.hpp"

namespace strata {

double z_component(double measured_deg, double truth_deg, double p_min,
                   double p_max, bool circular) {
  if (!(p_max > p_min)) {
    throw InvalidArgument("z_component: p_max must exceed p_min");
  }
  double diff = std::abs(measured_deg - truth_deg);
  if (circular) {
    diff = std::fmod(diff, 360.0);
    diff = std::min(diff, 360.0 - diff);
  }
  const double z = (diff - p_min) / (p_max - p_min);
  return std::clamp(z, 0.0, 1.0);
}

double z_region(double z_strike, double z_dip, double z_dipdir) {
  return (z_strike + z_dip + z_dipdir) / 3.0;
}

double z_run(const std::vector<double>& region_scores) {
  if (region_scores.empty()) {
    throw InvalidArgument("z_run: no region scores");
  }
  double sum_squares = 0;
  for (const double z : region_scores) sum_squares += z * z;
  return std::sqrt(sum_squares) / static_cast<double>(region_scores.size());
}

std::vector<std::pair<std::size_t, std::size_t>> match_regions(
    const std::vector<MeasuredSurface>& measured,
    const std::vector<GroundTruthSurface>& truth, double max_angle_deg) {
  struct Pair {
    double angle;
    std::size_t m;
    std::size_t t;
  };
  std::vector<Pair> pairs;
  pairs.reserve(measured.size() * truth.size());
  for (std::size_t m = 0; m < measured.size(); ++m) {
    for (std::size_t t = 0; t < truth.size(); ++t) {
      const double angle =
          rad_to_deg(acute_angle(measured[m].normal, truth[t].normal));
      if (angle <= max_angle_deg) pairs.push_back({angle, m, t});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    if (a.m != b.m) return a.m < b.m;
    return a.t < b.t;
  });

  std::vector<bool> m_used(measured.size(), false);
  std::vector<bool> t_used(truth.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> matching;
  for (const Pair& p : pairs) {
    if (m_used[p.m] || t_used[p.t]) continue;
    m_used[p.m] = true;
    t_used[p.t] = true;
    matching.emplace_back(p.m, p.t);
  }
  return matching;
}

namespace {

/// Azimuth component score between a possibly-undefined measured angle and
/// the ground-truth value. Two horizontal planes agree by definition; a
/// horizontal measurement against a dipping truth is maximally wrong.
double azimuth_score(const std::optional<double>& measured, double truth_deg,
                     double truth_dip_deg) {
  if (measured.has_value()) {
    return z_component(*measured, truth_deg, 0.0, 360.0, true);
  }
  return truth_dip_deg < kHorizontalDipCutoffDeg ? 0.0 : 1.0;
}

}  // namespace

QualityBreakdown score_run(const std::vector<MeasuredSurface>& measured,
                           const std::vector<GroundTruthSurface>& truth,
                           double max_angle_deg) {
  if (measured.empty() || truth.empty()) {
    throw InvalidArgument("score_run: measured and truth must be nonempty");
  }

  const auto matching = match_regions(measured, truth, max_angle_deg);

  QualityBreakdown out;
  std::vector<bool> m_used(measured.size(), false);
  std::vector<bool> t_used(truth.size(), false);
  std::vector<double> scores;
  scores.reserve(truth.size());

  for (const auto& [m, t] : matching) {
    m_used[m] = true;
    t_used[t] = true;

    const MeasuredSurface& ms = measured[m];
    const GroundTruthSurface& gt = truth[t];

    MatchedScore score;
    score.region_id = ms.region_id;
    score.truth_id = gt.id;
    score.normal_angle_deg = rad_to_deg(acute_angle(ms.normal, gt.normal));
    score.z_strike =
        azimuth_score(ms.orientation.strike_deg, gt.strike_deg, gt.dip_deg);
    score.z_dip =
        z_component(ms.orientation.dip_deg, gt.dip_deg, 0.0, 90.0, false);
    score.z_dipdir =
        azimuth_score(ms.orientation.dipdir_deg, gt.dipdir_deg, gt.dip_deg);
    score.z_region = z_region(score.z_strike, score.z_dip, score.z_dipdir);
    out.matched.push_back(score);
    scores.push_back(score.z_region);
  }

  for (std::size_t t = 0; t < truth.size(); ++t) {
    if (!t_used[t]) {
      out.unmatched_truth_ids.push_back(truth[t].id);
      scores.push_back(1.0);
    }
  }
  for (std::size_t m = 0; m < measured.size(); ++m) {
    if (!m_used[m]) out.unmatched_region_ids.push_back(measured[m].region_id);
  }

  out.z_run = z_run(scores);
  return out;
}

}  // namespace strata
