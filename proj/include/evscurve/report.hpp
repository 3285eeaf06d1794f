#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evscurve/error.hpp"
#include "evscurve/fit.hpp"
#include "evscurve/forecast.hpp"
#include "evscurve/infra.hpp"
#include "evscurve/ingest.hpp"

namespace evscurve {

std::string_view tool_version() noexcept;
inline constexpr int kReportSchemaVersion = 1;

enum class Command { fit, crossings, infra, sensitivity };
enum class Format { json, csv, svg };

std::string_view command_name(Command c) noexcept;
std::string_view format_name(Format f) noexcept;
/// Throw ValidationError on unknown names.
Command parse_command(std::string_view name);
Format parse_format(std::string_view name);

struct RunConfig {
  Command command = Command::fit;
  std::optional<std::string> sales_path;
  std::optional<std::string> chargers_path;
  Epoch epoch = kDefaultEpoch;
  std::vector<double> thresholds;
  int horizon_quarters = kDefaultHorizonQuarters;
  Format format = Format::json;
  std::optional<std::string> out_path;
  std::vector<TimePoint> truncations;
  double adequacy = kDefaultAdequacy;

  /// Sorts and deduplicates thresholds and truncations, defaults an empty
  /// threshold list to {0.5}, and validates ranges. Throws ValidationError.
  [[nodiscard]] RunConfig normalized() const;
};

enum class RegionStatus { fitted, failed, ok, no_data };
std::string_view status_name(RegionStatus s) noexcept;

struct RegionOutcome {
  std::string region;
  RegionStatus status = RegionStatus::failed;
  std::optional<ErrorCode> failure;
  std::string message;

  AdoptionSeries observed;
  std::optional<FitResult> fit;
  std::vector<CrossingReport> crossings;  // one per threshold
  std::optional<ForecastSeries> forecast;
  std::vector<SensitivityReport> sensitivity;  // one per threshold
  std::optional<ChargerRecord> charger;
  std::optional<InfraMetric> infra;

  [[nodiscard]] bool succeeded() const noexcept;
};

struct Report {
  RunConfig config;               // normalized
  std::vector<RegionOutcome> regions;  // canonical region order
  std::vector<Ranking> crossing_rankings;
  std::vector<InfraMetric> infra_ranking;

  [[nodiscard]] std::size_t succeeded() const noexcept;
};

/// Each command reads its inputs from the configured paths. Unreadable or
/// invalid input throws (Error with code io, or ValidationError); per-region
/// failures are recorded in the report instead.
Report cmd_fit(const RunConfig& config);
Report cmd_crossings(const RunConfig& config);
Report cmd_infra(const RunConfig& config);
Report cmd_sensitivity(const RunConfig& config);
Report run_command(const RunConfig& config);

/// Same commands over in-memory CSV text; paths in the config are only echoed.
Report build_report(const RunConfig& config, std::optional<std::string_view> sales_csv,
                    std::optional<std::string_view> chargers_csv);

std::string render_json(const Report& report);
std::string render_csv(const Report& report);
/// Forecast panels for every fitted region. Only fit and crossings reports.
std::string render_svg(const Report& report);
std::string render(const Report& report);

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitNoRegion = 3 };

}  // namespace evscurve
