#include "evscurve/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "evscurve/error.hpp"

namespace evscurve {

namespace {

constexpr int kMinYear = 1990;

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::string at_line(std::size_t line, std::string_view field, std::string_view what) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  if (!field.empty()) os << "field '" << field << "': ";
  os << what;
  return os.str();
}

[[noreturn]] void fail(std::size_t line, std::string_view field, std::string_view what,
                       ErrorCode code = ErrorCode::validation) {
  throw ValidationError(at_line(line, field, what), line, std::string(field), code);
}

void check_quarter(int quarter, std::string_view field, std::size_t line = 0) {
  if (quarter < 1 || quarter > 4) {
    fail(line, field, "quarter must be in 1..4, got " + std::to_string(quarter));
  }
}

template <typename Int>
Int parse_integer(std::string_view raw, std::size_t line, std::string_view field) {
  const auto text = trim(raw);
  if (text.empty()) fail(line, field, "empty value");
  if constexpr (std::is_unsigned_v<Int>) {
    if (text.front() == '-') fail(line, field, "negative count '" + std::string(text) + "'");
  }
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec == std::errc::result_out_of_range) fail(line, field, "value out of range '" + std::string(text) + "'");
  if (ec != std::errc{} || ptr != end) fail(line, field, "not an integer '" + std::string(text) + "'");
  return value;
}

struct Row {
  std::size_t line;
  std::vector<std::string_view> fields;
};

// Splits text into header-checked rows. Blank lines are skipped; a UTF-8 BOM
// at the start is ignored.
std::vector<Row> split_rows(std::string_view text, std::string_view header) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Row> rows;
  std::size_t line = 0;
  bool seen_header = false;
  std::size_t pos = 0;
  const std::size_t columns = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto content = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line;
    if (content.ends_with('\r')) content.remove_suffix(1);
    if (!seen_header) {
      if (trim(content) != header) {
        fail(line, {}, "expected header '" + std::string(header) + "', got '" + std::string(content) + "'");
      }
      seen_header = true;
      continue;
    }
    if (trim(content).empty()) continue;
    Row row{line, {}};
    std::size_t start = 0;
    while (true) {
      const auto comma = content.find(',', start);
      row.fields.push_back(content.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (row.fields.size() != columns) {
      fail(line, {}, "expected " + std::to_string(columns) + " fields, got " + std::to_string(row.fields.size()));
    }
    rows.push_back(std::move(row));
  }
  if (!seen_header) fail(1, {}, "missing header '" + std::string(header) + "'");
  return rows;
}

std::string parse_region(std::string_view raw, std::size_t line, std::string_view field = "region") {
  const auto name = trim(raw);
  if (name.empty()) fail(line, field, "empty region identifier");
  return std::string(name);
}

TimePoint parse_time(const Row& row) {
  const int year = parse_integer<int>(row.fields[1], row.line, "year");
  if (year < kMinYear) fail(row.line, "year", "year must be >= " + std::to_string(kMinYear));
  const int quarter = parse_integer<int>(row.fields[2], row.line, "quarter");
  check_quarter(quarter, "quarter", row.line);
  return {year, quarter};
}

}  // namespace

TimePoint TimePoint::from_index(std::int64_t index) {
  const auto year = index >= 0 ? index / 4 : (index - 3) / 4;
  return {static_cast<int>(year), static_cast<int>(index - year * 4) + 1};
}

TimePoint TimePoint::parse(std::string_view text) {
  const auto s = trim(text);
  const auto q = s.find_first_of("Qq");
  if (q == std::string_view::npos || q == 0 || q + 2 != s.size()) {
    throw ValidationError("expected a quarter literal like 2011Q1, got '" + std::string(text) + "'", 0, "quarter");
  }
  int year = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + q, year);
  if (ec != std::errc{} || ptr != s.data() + q) {
    throw ValidationError("bad year in quarter literal '" + std::string(text) + "'", 0, "year");
  }
  const char digit = s[q + 1];
  if (digit < '1' || digit > '4') {
    throw ValidationError("quarter must be in 1..4 in '" + std::string(text) + "'", 0, "quarter");
  }
  return {year, digit - '0'};
}

std::string TimePoint::to_string() const {
  return std::to_string(year) + "Q" + std::to_string(quarter);
}

double quarter_to_time(int year, int quarter, Epoch epoch) {
  check_quarter(quarter, "quarter");
  check_quarter(epoch.quarter, "epoch.quarter");
  // Quarter counts are integers, so the division by 4 is exact.
  const auto offset = TimePoint{year, quarter}.index() - epoch.index();
  return static_cast<double>(offset) / 4.0;
}

std::string canonical_region(std::string_view name) {
  std::string key(trim(name));
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return key;
}

double compute_share(std::uint64_t bev_sales, std::uint64_t total_sales) {
  if (total_sales == 0) {
    throw Error(ErrorCode::undefined_share, "share undefined: total_sales is 0");
  }
  if (bev_sales > total_sales) {
    throw ValidationError("bev_sales exceeds total_sales", 0, "bev_sales");
  }
  return static_cast<double>(bev_sales) / static_cast<double>(total_sales);
}

std::optional<double> AdoptionObservation::share() const {
  if (total_sales == 0) return std::nullopt;
  return compute_share(bev_sales, total_sales);
}

AdoptionSeries::AdoptionSeries(std::string region, std::vector<AdoptionObservation> observations,
                               Epoch epoch)
    : region_(trim(region)), key_(canonical_region(region)), epoch_(epoch),
      observations_(std::move(observations)) {
  if (key_.empty()) throw ValidationError("empty region identifier", 0, "region");
  check_quarter(epoch.quarter, "epoch.quarter");
  for (const auto& obs : observations_) {
    check_quarter(obs.time.quarter, "quarter");
    if (obs.bev_sales > obs.total_sales) {
      throw ValidationError("bev_sales exceeds total_sales in " + region_ + " " + obs.time.to_string(), 0,
                            "bev_sales");
    }
  }
  std::stable_sort(observations_.begin(), observations_.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  const auto dup = std::adjacent_find(observations_.begin(), observations_.end(),
                                      [](const auto& a, const auto& b) { return a.time == b.time; });
  if (dup != observations_.end()) {
    throw ValidationError("duplicate quarter " + dup->time.to_string() + " for region " + region_, 0, "quarter",
                          ErrorCode::duplicate);
  }
}

AdoptionSeries AdoptionSeries::truncated(TimePoint last) const {
  std::vector<AdoptionObservation> kept;
  for (const auto& obs : observations_) {
    if (obs.time <= last) kept.push_back(obs);
  }
  return AdoptionSeries(region_, std::move(kept), epoch_);
}

AdoptionSeries AdoptionSeries::with_epoch(Epoch epoch) const {
  return AdoptionSeries(region_, observations_, epoch);
}

std::vector<AdoptionSeries> parse_sales_csv(std::string_view text, Epoch epoch) {
  struct Pending {
    std::string display;
    std::vector<AdoptionObservation> observations;
    std::map<TimePoint, std::size_t> seen;
  };
  std::map<std::string, Pending> by_key;

  for (const auto& row : split_rows(text, kSalesHeader)) {
    auto region = parse_region(row.fields[0], row.line);
    const auto time = parse_time(row);
    const auto bev = parse_integer<std::uint64_t>(row.fields[3], row.line, "bev_sales");
    const auto total = parse_integer<std::uint64_t>(row.fields[4], row.line, "total_sales");
    if (bev > total) fail(row.line, "bev_sales", "bev_sales exceeds total_sales");

    auto& pending = by_key[canonical_region(region)];
    if (pending.display.empty()) pending.display = std::move(region);
    const auto [it, inserted] = pending.seen.emplace(time, row.line);
    if (!inserted) {
      fail(row.line, {},
           "duplicate observation for region '" + pending.display + "' " + time.to_string() +
               " (first seen on line " + std::to_string(it->second) + ")",
           ErrorCode::duplicate);
    }
    pending.observations.push_back({time, bev, total});
  }

  std::vector<AdoptionSeries> out;
  out.reserve(by_key.size());
  for (auto& [key, pending] : by_key) {
    out.emplace_back(std::move(pending.display), std::move(pending.observations), epoch);
  }
  return out;
}

std::vector<ChargerRecord> parse_chargers_csv(std::string_view text) {
  std::map<std::string, std::pair<ChargerRecord, std::size_t>> by_key;
  for (const auto& row : split_rows(text, kChargersHeader)) {
    ChargerRecord rec;
    rec.region = parse_region(row.fields[0], row.line);
    rec.as_of = parse_time(row);
    rec.public_chargers = parse_integer<std::uint64_t>(row.fields[3], row.line, "public_chargers");
    rec.bev_stock = parse_integer<std::uint64_t>(row.fields[4], row.line, "bev_stock");
    auto key = canonical_region(rec.region);
    const auto [it, inserted] = by_key.emplace(std::move(key), std::pair{rec, row.line});
    if (!inserted) {
      fail(row.line, {},
           "duplicate charger record for region '" + rec.region + "' (first seen on line " +
               std::to_string(it->second.second) + ")",
           ErrorCode::duplicate);
    }
  }
  std::vector<ChargerRecord> out;
  out.reserve(by_key.size());
  for (auto& [key, entry] : by_key) out.push_back(std::move(entry.first));
  return out;
}

std::vector<BanYear> parse_ban_years_csv(std::string_view text) {
  std::vector<BanYear> out;
  for (const auto& row : split_rows(text, kBanYearsHeader)) {
    out.push_back({parse_region(row.fields[0], row.line, "country"),
                   parse_integer<int>(row.fields[1], row.line, "ban_year")});
  }
  return out;
}

std::string serialize_sales_csv(const std::vector<AdoptionSeries>& series) {
  std::string out(kSalesHeader);
  out += '\n';
  for (const auto& s : series) {
    for (const auto& obs : s.observations()) {
      out += s.region();
      out += ',' + std::to_string(obs.time.year) + ',' + std::to_string(obs.time.quarter) + ',' +
             std::to_string(obs.bev_sales) + ',' + std::to_string(obs.total_sales) + '\n';
    }
  }
  return out;
}

AdoptionSeries aggregate_series(const std::vector<AdoptionSeries>& series, std::string region) {
  std::map<TimePoint, AdoptionObservation> sums;
  Epoch epoch = series.empty() ? kDefaultEpoch : series.front().epoch();
  for (const auto& s : series) {
    for (const auto& obs : s.observations()) {
      auto& acc = sums.try_emplace(obs.time, AdoptionObservation{obs.time, 0, 0}).first->second;
      acc.bev_sales += obs.bev_sales;
      acc.total_sales += obs.total_sales;
    }
  }
  std::vector<AdoptionObservation> obs;
  obs.reserve(sums.size());
  for (auto& [time, o] : sums) obs.push_back(o);
  return AdoptionSeries(std::move(region), std::move(obs), epoch);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io, "error reading '" + path + "'");
  return buf.str();
}

}  // namespace evscurve
