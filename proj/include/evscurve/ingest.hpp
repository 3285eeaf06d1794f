#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evscurve {

/// A calendar quarter. Quarters map to the start of the quarter on the time axis.
struct TimePoint {
  int year = 2011;
  int quarter = 1;

  /// Absolute quarter count, year * 4 + (quarter - 1).
  [[nodiscard]] constexpr std::int64_t index() const noexcept {
    return static_cast<std::int64_t>(year) * 4 + (quarter - 1);
  }
  [[nodiscard]] static TimePoint from_index(std::int64_t index);

  /// Parses "YYYYQn", e.g. "2011Q1".
  [[nodiscard]] static TimePoint parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] TimePoint next(std::int64_t quarters = 1) const {
    return from_index(index() + quarters);
  }

  friend constexpr auto operator<=>(const TimePoint&, const TimePoint&) = default;
};

using Epoch = TimePoint;
inline constexpr Epoch kDefaultEpoch{2011, 1};

/// (year - epoch.year) + (quarter - epoch.quarter) / 4. Throws ValidationError
/// naming the field when either quarter lies outside 1..4.
double quarter_to_time(int year, int quarter, Epoch epoch = kDefaultEpoch);
inline double quarter_to_time(TimePoint tp, Epoch epoch = kDefaultEpoch) {
  return quarter_to_time(tp.year, tp.quarter, epoch);
}

/// Trimmed, ASCII case-folded form used to match region identifiers.
std::string canonical_region(std::string_view name);

/// bev_sales / total_sales. Throws on total_sales == 0 (undefined share) and on
/// bev_sales > total_sales.
double compute_share(std::uint64_t bev_sales, std::uint64_t total_sales);

struct AdoptionObservation {
  TimePoint time;
  std::uint64_t bev_sales = 0;
  std::uint64_t total_sales = 0;

  /// Absent when total_sales == 0.
  [[nodiscard]] std::optional<double> share() const;

  friend bool operator==(const AdoptionObservation&, const AdoptionObservation&) = default;
};

/// One region's observations, sorted by time with no duplicate quarters.
class AdoptionSeries {
 public:
  AdoptionSeries() = default;
  /// Sorts the observations; throws ValidationError on duplicate quarters,
  /// an empty region name or bev_sales > total_sales.
  AdoptionSeries(std::string region, std::vector<AdoptionObservation> observations,
                 Epoch epoch = kDefaultEpoch);

  [[nodiscard]] const std::string& region() const noexcept { return region_; }
  [[nodiscard]] const std::string& key() const noexcept { return key_; }
  [[nodiscard]] Epoch epoch() const noexcept { return epoch_; }
  [[nodiscard]] const std::vector<AdoptionObservation>& observations() const noexcept {
    return observations_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return observations_.size(); }
  [[nodiscard]] bool empty() const noexcept { return observations_.empty(); }
  [[nodiscard]] double t(std::size_t i) const { return quarter_to_time(observations_.at(i).time, epoch_); }

  /// Observations at or before `last`.
  [[nodiscard]] AdoptionSeries truncated(TimePoint last) const;
  [[nodiscard]] AdoptionSeries with_epoch(Epoch epoch) const;

  friend bool operator==(const AdoptionSeries&, const AdoptionSeries&) = default;

 private:
  std::string region_;
  std::string key_;
  Epoch epoch_ = kDefaultEpoch;
  std::vector<AdoptionObservation> observations_;
};

struct ChargerRecord {
  std::string region;
  std::uint64_t public_chargers = 0;
  std::uint64_t bev_stock = 0;
  TimePoint as_of;

  friend bool operator==(const ChargerRecord&, const ChargerRecord&) = default;
};

struct BanYear {
  std::string country;
  int ban_year = 0;

  friend bool operator==(const BanYear&, const BanYear&) = default;
};

inline constexpr std::string_view kSalesHeader = "region,year,quarter,bev_sales,total_sales";
inline constexpr std::string_view kChargersHeader = "region,year,quarter,public_chargers,bev_stock";
inline constexpr std::string_view kBanYearsHeader = "country,ban_year";

/// One series per distinct canonical region, ordered by canonical key. The
/// first spelling seen for a region is kept for output.
std::vector<AdoptionSeries> parse_sales_csv(std::string_view text, Epoch epoch = kDefaultEpoch);

/// One record per region, ordered by canonical key. A region listed twice is an error.
std::vector<ChargerRecord> parse_chargers_csv(std::string_view text);

std::vector<BanYear> parse_ban_years_csv(std::string_view text);

/// Inverse of parse_sales_csv: header plus one row per observation.
std::string serialize_sales_csv(const std::vector<AdoptionSeries>& series);

/// Sums counts per quarter across all series into a single series named `region`.
AdoptionSeries aggregate_series(const std::vector<AdoptionSeries>& series, std::string region);

std::string read_file(const std::string& path);

}  // namespace evscurve
