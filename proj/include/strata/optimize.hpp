#pragma once

#include <utility>

namespace strata {

struct GoldenResult {
  double x = 0;
  double fx = 0;
  int evaluations = 0;
};

/// Golden-section minimization of f on [a, b], stopping once b - a < tol.
/// Assumes f is unimodal on the bracket; callers narrow the bracket first
/// when the objective may have several local minima. Returns the best point
/// evaluated anywhere during the search, which on a non-unimodal bracket is
/// never worse than the converged interval's midpoint.
template <typename F>
GoldenResult golden_section_minimize(F&& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.61803398874989484820;  // (sqrt(5) - 1) / 2
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int evals = 2;
  GoldenResult best{f1 <= f2 ? x1 : x2, std::min(f1, f2), 0};
  while (b - a >= tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      if (f1 < best.fx) best = {x1, f1, 0};
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      if (f2 < best.fx) best = {x2, f2, 0};
    }
    ++evals;
  }
  const double mid = 0.5 * (a + b);
  const double fmid = f(mid);
  if (fmid < best.fx) best = {mid, fmid, 0};
  best.evaluations = evals + 1;
  return best;
}

}  // namespace strata
