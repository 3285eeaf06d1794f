#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "evscurve/ingest.hpp"
#include "evscurve/scurve.hpp"

namespace evscurve {

/// A (t, share) pair fed to the estimators. An absent share, or one equal to
/// 0 or 1, is excluded from the fit.
struct Sample {
  double t = 0.0;
  std::optional<double> share;
};

std::vector<Sample> samples_of(const AdoptionSeries& series);

[[nodiscard]] inline bool usable(const Sample& s) noexcept {
  return s.share && *s.share > 0.0 && *s.share < 1.0;
}

struct FitResult {
  LogisticParams params;
  std::size_t n_used = 0;
  std::size_t n_excluded = 0;
  double sse_logit = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
};

inline constexpr std::size_t kMinUsablePoints = 3;

/// Unweighted least squares of logit(share) on t. Throws InsufficientDataError
/// below three usable points and Error(degenerate_abscissa) when every usable
/// point has the same t.
FitResult fit_logit_ols(std::span<const Sample> samples);
FitResult fit_logit_ols(const AdoptionSeries& series);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Exhaustive minimisation of sse_logit over a steps x steps grid in (beta,
/// ln alpha), endpoints included. Ties go to the smallest beta, then the
/// smallest ln alpha. Same usable-point rules as fit_logit_ols; steps >= 100.
FitResult fit_grid_search(std::span<const Sample> samples, Interval beta_range, Interval ln_alpha_range,
                          std::size_t steps);
FitResult fit_grid_search(const AdoptionSeries& series, Interval beta_range, Interval ln_alpha_range,
                          std::size_t steps);

/// Sum of squared logit-space residuals over the usable samples.
double sse_logit(std::span<const Sample> samples, const LogisticParams& params);

struct Residual {
  double t = 0.0;
  double value = 0.0;
};

struct ResidualSet {
  std::vector<Residual> points;  // usable observations, t order
  std::size_t n_skipped = 0;
};

/// logit(share) - (beta * t - ln alpha) for each usable observation.
ResidualSet residuals(const AdoptionSeries& series, const LogisticParams& params);

}  // namespace evscurve
