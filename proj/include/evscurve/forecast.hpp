#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evscurve/error.hpp"
#include "evscurve/fit.hpp"
#include "evscurve/ingest.hpp"
#include "evscurve/scurve.hpp"

namespace evscurve {

inline constexpr int kDefaultHorizonQuarters = 120;

struct ForecastPoint {
  TimePoint quarter;
  double t = 0.0;
  double share = 0.0;
};

struct ForecastSeries {
  std::string region;
  LogisticParams params;
  std::vector<ForecastPoint> points;
};

/// One point per quarter in [from, to]. Throws Error(range) when from > to.
ForecastSeries forecast_series(const LogisticParams& params, TimePoint from, TimePoint to,
                               Epoch epoch = kDefaultEpoch, std::string region = {});

struct CrossingReport {
  std::string region;
  double threshold = 0.5;
  std::optional<double> crossing_t;
  std::optional<TimePoint> crossing_quarter;
  Direction direction = Direction::none;
};

/// Earliest quarter whose start is at or after the crossing time. A crossing
/// less than 1e-9 years after a quarter start counts as that quarter, so fitted
/// parameters carrying round-off still land on an exact boundary hit.
/// crossing_quarter is also absent when the crossing lies beyond any
/// representable calendar year.
CrossingReport crossing_quarter(const LogisticParams& params, double threshold, Epoch epoch = kDefaultEpoch,
                                std::string region = {});

struct Ranking {
  double threshold = 0.5;
  std::vector<CrossingReport> order;
  /// Latest minus earliest crossing_t among regions that cross.
  std::optional<double> gap_years;
};

/// Ascending crossing_t, regions without a crossing last, ties by canonical
/// region identifier. Throws Error(mixed_thresholds) if thresholds differ.
Ranking rank_regions(std::vector<CrossingReport> reports);

struct SensitivityRow {
  TimePoint truncation;
  std::size_t n_used = 0;
  std::optional<double> crossing_t;
  std::optional<TimePoint> crossing_quarter;
  Direction direction = Direction::none;
  std::optional<ErrorCode> failure;
  std::string message;

  [[nodiscard]] bool fitted() const noexcept { return !failure.has_value(); }
};

struct SensitivityReport {
  std::string region;
  double threshold = 0.5;
  std::vector<SensitivityRow> rows;
  /// Max minus min crossing quarter over rows that produced one; 0 when fewer than two did.
  std::int64_t spread_quarters = 0;
};

/// Refits on each prefix ending at a truncation quarter. A prefix that cannot
/// be fitted yields a failed row rather than an error. Throws Error(precondition)
/// for an empty truncation list.
SensitivityReport truncation_sensitivity(const AdoptionSeries& series, double threshold,
                                         std::span<const TimePoint> truncations);

/// Truncation quarters at the given fractions of the series length: the
/// observation at index ceil(f * n) - 1.
std::vector<TimePoint> fractional_truncations(const AdoptionSeries& series, std::span<const double> fractions);

}  // namespace evscurve
