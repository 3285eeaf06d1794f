#include "evscurve/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "evscurve/error.hpp"

namespace evscurve {

namespace {

struct Usable {
  std::vector<double> t;
  std::vector<double> z;  // logit(share)
  std::size_t excluded = 0;
};

// Usable points are sorted by (t, share) so that summation order, and hence
// every rounded result, is independent of the input order.
Usable collect(std::span<const Sample> samples) {
  Usable u;
  std::vector<std::pair<double, double>> points;
  for (const auto& s : samples) {
    if (!usable(s)) {
      ++u.excluded;
      continue;
    }
    points.emplace_back(s.t, *s.share);
  }
  std::sort(points.begin(), points.end());
  for (const auto& [t, share] : points) {
    u.t.push_back(t);
    u.z.push_back(logit(share));
  }
  if (u.t.size() < kMinUsablePoints) throw InsufficientDataError(u.t.size());
  const auto [lo, hi] = std::minmax_element(u.t.begin(), u.t.end());
  if (*lo == *hi) {
    throw Error(ErrorCode::degenerate_abscissa,
                "all " + std::to_string(u.t.size()) + " usable observations share t = " + std::to_string(*lo));
  }
  return u;
}

double sse_of(const Usable& u, double beta, double ln_alpha) {
  double sse = 0.0;
  for (std::size_t i = 0; i < u.t.size(); ++i) {
    const double r = u.z[i] - (beta * u.t[i] - ln_alpha);
    sse += r * r;
  }
  return sse;
}

FitResult make_result(const Usable& u, const LogisticParams& params, double sse) {
  FitResult r;
  r.params = params;
  r.n_used = u.t.size();
  r.n_excluded = u.excluded;
  r.sse_logit = sse;
  r.t_min = *std::min_element(u.t.begin(), u.t.end());
  r.t_max = *std::max_element(u.t.begin(), u.t.end());
  return r;
}

void check_interval(Interval iv, const char* name) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
    throw Error(ErrorCode::precondition, std::string(name) + " must be a finite interval with lo <= hi");
  }
}

}  // namespace

std::vector<Sample> samples_of(const AdoptionSeries& series) {
  std::vector<Sample> out;
  out.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    out.push_back({series.t(i), series.observations()[i].share()});
  }
  return out;
}

FitResult fit_logit_ols(std::span<const Sample> samples) {
  const auto u = collect(samples);
  const auto n = static_cast<double>(u.t.size());

  double t_mean = 0.0;
  double z_mean = 0.0;
  for (std::size_t i = 0; i < u.t.size(); ++i) {
    t_mean += u.t[i];
    z_mean += u.z[i];
  }
  t_mean /= n;
  z_mean /= n;

  // Centred sums keep the normal equations well conditioned for t far from 0.
  double sxx = 0.0;
  double sxz = 0.0;
  for (std::size_t i = 0; i < u.t.size(); ++i) {
    const double dt = u.t[i] - t_mean;
    sxx += dt * dt;
    sxz += dt * (u.z[i] - z_mean);
  }
  // Identical logit values are a flat line; skip the mean so round-off cannot
  // leave a spurious non-zero slope.
  const bool flat = std::adjacent_find(u.z.begin(), u.z.end(), std::not_equal_to<>()) == u.z.end();
  const double slope = flat ? 0.0 : sxz / sxx;
  const double intercept = flat ? u.z.front() : z_mean - slope * t_mean;
  const auto params = params_from_line(slope, intercept);
  return make_result(u, params, sse_of(u, params.beta(), params.ln_alpha()));
}

FitResult fit_logit_ols(const AdoptionSeries& series) {
  const auto samples = samples_of(series);
  return fit_logit_ols(std::span<const Sample>(samples));
}

FitResult fit_grid_search(std::span<const Sample> samples, Interval beta_range, Interval ln_alpha_range,
                          std::size_t steps) {
  if (steps < 100) {
    throw Error(ErrorCode::precondition, "grid search needs steps >= 100, got " + std::to_string(steps));
  }
  check_interval(beta_range, "beta_range");
  check_interval(ln_alpha_range, "ln_alpha_range");
  const auto u = collect(samples);

  const auto at = [steps](Interval iv, std::size_t i) {
    return iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  };
  double best = std::numeric_limits<double>::infinity();
  double best_beta = beta_range.lo;
  double best_ln_alpha = ln_alpha_range.lo;
  // Ascending beta outer, ascending ln alpha inner, strict improvement only:
  // the first minimiser found is the lexicographically smallest.
  for (std::size_t i = 0; i < steps; ++i) {
    const double beta = at(beta_range, i);
    for (std::size_t j = 0; j < steps; ++j) {
      const double ln_alpha = at(ln_alpha_range, j);
      const double sse = sse_of(u, beta, ln_alpha);
      if (sse < best) {
        best = sse;
        best_beta = beta;
        best_ln_alpha = ln_alpha;
      }
    }
  }
  return make_result(u, LogisticParams::from_log_alpha(best_ln_alpha, best_beta), best);
}

FitResult fit_grid_search(const AdoptionSeries& series, Interval beta_range, Interval ln_alpha_range,
                          std::size_t steps) {
  const auto samples = samples_of(series);
  return fit_grid_search(std::span<const Sample>(samples), beta_range, ln_alpha_range, steps);
}

double sse_logit(std::span<const Sample> samples, const LogisticParams& params) {
  double sse = 0.0;
  for (const auto& s : samples) {
    if (!usable(s)) continue;
    const double r = logit(*s.share) - (params.beta() * s.t - params.ln_alpha());
    sse += r * r;
  }
  return sse;
}

ResidualSet residuals(const AdoptionSeries& series, const LogisticParams& params) {
  ResidualSet out;
  for (const auto& s : samples_of(series)) {
    if (!usable(s)) {
      ++out.n_skipped;
      continue;
    }
    out.points.push_back({s.t, logit(*s.share) - (params.beta() * s.t - params.ln_alpha())});
  }
  return out;
}

}  // namespace evscurve
