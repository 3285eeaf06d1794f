#include "evscurve/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace evscurve {

namespace {

// |t| beyond this many years has no calendar quarter with an int year.
constexpr double kMaxCalendarYears = 1.0e8;
// A crossing this close after a quarter start is reported in that quarter.
constexpr double kBoundarySlackYears = 1.0e-9;

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw DomainError("threshold must lie in (0, 1), got " + std::to_string(threshold));
  }
}

}  // namespace

ForecastSeries forecast_series(const LogisticParams& params, TimePoint from, TimePoint to, Epoch epoch,
                               std::string region) {
  if (from > to) {
    throw Error(ErrorCode::range, "forecast range is empty: " + from.to_string() + " > " + to.to_string());
  }
  ForecastSeries out{std::move(region), params, {}};
  out.points.reserve(static_cast<std::size_t>(to.index() - from.index() + 1));
  for (auto idx = from.index(); idx <= to.index(); ++idx) {
    const auto q = TimePoint::from_index(idx);
    const double t = quarter_to_time(q, epoch);
    out.points.push_back({q, t, logistic_eval(params, t)});
  }
  return out;
}

CrossingReport crossing_quarter(const LogisticParams& params, double threshold, Epoch epoch, std::string region) {
  check_threshold(threshold);
  CrossingReport report{std::move(region), threshold, std::nullopt, std::nullopt, Direction::none};
  if (params.beta() == 0.0) return report;

  const auto crossing = crossing_time(params, threshold);
  report.crossing_t = crossing.t;
  report.direction = crossing.direction;
  if (!(std::abs(crossing.t) < kMaxCalendarYears)) return report;

  const auto quarters = std::ceil((crossing.t - kBoundarySlackYears) * 4.0);
  const auto idx = epoch.index() + static_cast<std::int64_t>(quarters);
  report.crossing_quarter = TimePoint::from_index(idx);
  return report;
}

Ranking rank_regions(std::vector<CrossingReport> reports) {
  Ranking out;
  if (!reports.empty()) out.threshold = reports.front().threshold;
  for (const auto& r : reports) {
    if (r.threshold != out.threshold) {
      throw Error(ErrorCode::mixed_thresholds, "cannot rank crossings at different thresholds");
    }
  }
  const auto sort_key = [](const CrossingReport& r) {
    return std::tuple(!r.crossing_t.has_value(), r.crossing_t.value_or(0.0), canonical_region(r.region), r.region);
  };
  std::sort(reports.begin(), reports.end(),
            [&](const CrossingReport& a, const CrossingReport& b) { return sort_key(a) < sort_key(b); });

  std::optional<double> lo;
  std::optional<double> hi;
  for (const auto& r : reports) {
    if (!r.crossing_t) continue;
    lo = std::min(lo.value_or(*r.crossing_t), *r.crossing_t);
    hi = std::max(hi.value_or(*r.crossing_t), *r.crossing_t);
  }
  if (lo) out.gap_years = *hi - *lo;
  out.order = std::move(reports);
  return out;
}

SensitivityReport truncation_sensitivity(const AdoptionSeries& series, double threshold,
                                         std::span<const TimePoint> truncations) {
  if (truncations.empty()) throw Error(ErrorCode::precondition, "truncation list is empty");
  check_threshold(threshold);

  std::vector<TimePoint> cuts(truncations.begin(), truncations.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  SensitivityReport report{series.region(), threshold, {}, 0};
  std::optional<std::int64_t> lo;
  std::optional<std::int64_t> hi;
  for (const auto& cut : cuts) {
    SensitivityRow row;
    row.truncation = cut;
    const auto prefix = series.truncated(cut);
    const auto samples = samples_of(prefix);
    row.n_used = static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), usable));
    try {
      const auto fit = fit_logit_ols(std::span<const Sample>(samples));
      const auto crossing = crossing_quarter(fit.params, threshold, series.epoch(), series.region());
      row.crossing_t = crossing.crossing_t;
      row.crossing_quarter = crossing.crossing_quarter;
      row.direction = crossing.direction;
      if (row.crossing_quarter) {
        const auto idx = row.crossing_quarter->index();
        lo = std::min(lo.value_or(idx), idx);
        hi = std::max(hi.value_or(idx), idx);
      }
    } catch (const Error& e) {
      row.failure = e.code();
      row.message = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  if (lo) report.spread_quarters = *hi - *lo;
  return report;
}

std::vector<TimePoint> fractional_truncations(const AdoptionSeries& series, std::span<const double> fractions) {
  std::vector<TimePoint> out;
  if (series.empty()) return out;
  const auto n = static_cast<double>(series.size());
  for (const double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw DomainError("truncation fraction must lie in (0, 1]");
    const auto k = static_cast<std::size_t>(std::ceil(f * n));
    out.push_back(series.observations()[std::max<std::size_t>(k, 1) - 1].time);
  }
  return out;
}

}  // namespace evscurve
