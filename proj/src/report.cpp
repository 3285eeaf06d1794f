#include "evscurve/report.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include <json.hpp>

#include "evscurve/svg.hpp"
#include "format.hpp"

#ifndef EVSCURVE_VERSION
#define EVSCURVE_VERSION "0.0.0"
#endif

namespace evscurve {

namespace {

using nlohmann::json;
using detail::round12;
using detail::sig12;

constexpr int kMaxHorizonQuarters = 4000;
constexpr double kDefaultFractions[] = {0.5, 0.75, 1.0};

// Runs fn over items on a bounded pool of async tasks; results keep input order.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, Fn fn) -> std::vector<decltype(fn(items.front()))> {
  using Out = decltype(fn(items.front()));
  std::vector<Out> out;
  out.reserve(items.size());
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < items.size(); start += width) {
    std::vector<std::future<Out>> batch;
    const auto stop = std::min(items.size(), start + width);
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, [&fn, &items, i] { return fn(items[i]); }));
    }
    for (auto& f : batch) out.push_back(f.get());
  }
  return out;
}

void record_failure(RegionOutcome& outcome, const Error& e) {
  outcome.status = RegionStatus::failed;
  outcome.failure = e.code();
  outcome.message = e.what();
}

RegionOutcome fit_region(const AdoptionSeries& series, const RunConfig& cfg, bool with_crossings) {
  RegionOutcome outcome;
  outcome.region = series.region();
  outcome.observed = series;
  try {
    auto fit = fit_logit_ols(series);
    const auto from = series.observations().front().time;
    const auto to = series.observations().back().time.next(cfg.horizon_quarters);
    outcome.forecast = forecast_series(fit.params, from, to, series.epoch(), series.region());
    if (with_crossings) {
      for (const double p : cfg.thresholds) {
        outcome.crossings.push_back(crossing_quarter(fit.params, p, series.epoch(), series.region()));
      }
    }
    outcome.fit = fit;
    outcome.status = RegionStatus::fitted;
  } catch (const Error& e) {
    record_failure(outcome, e);
  }
  return outcome;
}

RegionOutcome sensitivity_region(const AdoptionSeries& series, const RunConfig& cfg) {
  RegionOutcome outcome;
  outcome.region = series.region();
  outcome.observed = series;
  const auto cuts = cfg.truncations.empty() ? fractional_truncations(series, kDefaultFractions) : cfg.truncations;
  for (const double p : cfg.thresholds) {
    outcome.sensitivity.push_back(truncation_sensitivity(series, p, cuts));
  }
  const SensitivityRow* first_failure = nullptr;
  bool any = false;
  for (const auto& rep : outcome.sensitivity) {
    for (const auto& row : rep.rows) {
      any = any || row.fitted();
      if (!row.fitted() && first_failure == nullptr) first_failure = &row;
    }
  }
  if (any) {
    outcome.status = RegionStatus::fitted;
  } else if (first_failure != nullptr) {
    outcome.status = RegionStatus::failed;
    outcome.failure = first_failure->failure;
    outcome.message = first_failure->message;
  }
  return outcome;
}

std::vector<AdoptionSeries> sales_input(const RunConfig& cfg, std::optional<std::string_view> csv) {
  if (!csv) throw Error(ErrorCode::precondition, std::string(command_name(cfg.command)) + " needs a sales CSV");
  return parse_sales_csv(*csv, cfg.epoch);
}

// --- JSON -----------------------------------------------------------------

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

json num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

json quarter_json(const std::optional<TimePoint>& q) { return q ? json(q->to_string()) : json(nullptr); }

json config_json(const RunConfig& c) {
  json thresholds = json::array();
  for (const double p : c.thresholds) thresholds.push_back(num(p));
  json truncations = json::array();
  for (const auto& q : c.truncations) truncations.push_back(q.to_string());
  return {
      {"adequacy", num(c.adequacy)},
      {"chargers", c.chargers_path ? json(*c.chargers_path) : json(nullptr)},
      {"command", command_name(c.command)},
      {"epoch", c.epoch.to_string()},
      {"format", format_name(c.format)},
      {"horizon_quarters", c.horizon_quarters},
      {"out", c.out_path ? json(*c.out_path) : json(nullptr)},
      {"sales", c.sales_path ? json(*c.sales_path) : json(nullptr)},
      {"thresholds", thresholds},
      {"truncations", truncations},
  };
}

json fit_json(const FitResult& f) {
  return {
      {"alpha", num(f.params.alpha())},
      {"beta", num(f.params.beta())},
      {"ln_alpha", num(f.params.ln_alpha())},
      {"t_mid", num(f.params.t_mid())},
      {"n_used", f.n_used},
      {"n_excluded", f.n_excluded},
      {"sse_logit", num(f.sse_logit)},
      {"t_min", num(f.t_min)},
      {"t_max", num(f.t_max)},
  };
}

json crossing_json(const CrossingReport& c) {
  return {
      {"threshold", num(c.threshold)},
      {"crossing_t", num(c.crossing_t)},
      {"crossing_quarter", quarter_json(c.crossing_quarter)},
      {"crossing_year", c.crossing_quarter ? json(c.crossing_quarter->year) : json(nullptr)},
      {"direction", direction_name(c.direction)},
  };
}

json sensitivity_json(const SensitivityReport& s) {
  json rows = json::array();
  for (const auto& r : s.rows) {
    json row = {
        {"truncation", r.truncation.to_string()},
        {"n_used", r.n_used},
        {"status", r.fitted() ? "fitted" : "failed"},
        {"crossing_t", num(r.crossing_t)},
        {"crossing_quarter", quarter_json(r.crossing_quarter)},
        {"direction", direction_name(r.direction)},
    };
    if (r.failure) {
      row["reason"] = code_name(*r.failure);
      row["message"] = r.message;
    }
    rows.push_back(std::move(row));
  }
  return {{"threshold", num(s.threshold)}, {"spread_quarters", s.spread_quarters}, {"rows", rows}};
}

json region_json(const RegionOutcome& o, Command command) {
  json r = {{"region", o.region}, {"status", status_name(o.status)}};
  if (o.failure) {
    r["reason"] = code_name(*o.failure);
    r["message"] = o.message;
  }
  switch (command) {
    case Command::fit:
    case Command::crossings:
      r["observations"] = o.observed.size();
      r["fit"] = o.fit ? fit_json(*o.fit) : json(nullptr);
      if (command == Command::fit) {
        json points = json::array();
        if (o.forecast) {
          for (const auto& p : o.forecast->points) {
            points.push_back({{"quarter", p.quarter.to_string()}, {"t", num(p.t)}, {"share", num(p.share)}});
          }
        }
        r["forecast"] = points;
      } else {
        json crossings = json::array();
        for (const auto& c : o.crossings) crossings.push_back(crossing_json(c));
        r["crossings"] = crossings;
      }
      break;
    case Command::sensitivity: {
      r["observations"] = o.observed.size();
      json reps = json::array();
      for (const auto& s : o.sensitivity) reps.push_back(sensitivity_json(s));
      r["sensitivity"] = reps;
      break;
    }
    case Command::infra:
      if (o.charger) {
        r["as_of"] = o.charger->as_of.to_string();
        r["public_chargers"] = o.charger->public_chargers;
        r["bev_stock"] = o.charger->bev_stock;
      }
      r["chargers_per_10_bev"] = o.infra ? num(o.infra->ratio) : json(nullptr);
      r["adequate"] = o.infra ? json(o.infra->adequate) : json(nullptr);
      break;
  }
  return r;
}

// --- CSV ------------------------------------------------------------------

std::string cell(const std::optional<double>& v) { return v && std::isfinite(*v) ? sig12(*v) : ""; }
std::string cell(const std::optional<TimePoint>& q) { return q ? q->to_string() : ""; }
std::string pct(double fraction) { return sig12(round12(fraction * 100.0)); }

std::string reason_cell(const std::optional<ErrorCode>& code) {
  return code ? std::string(code_name(*code)) : std::string();
}

std::size_t rank_of(const Ranking& ranking, const std::string& region) {
  for (std::size_t i = 0; i < ranking.order.size(); ++i) {
    if (ranking.order[i].region == region) return i + 1;
  }
  return 0;
}

}  // namespace

std::string_view tool_version() noexcept { return EVSCURVE_VERSION; }

std::string_view command_name(Command c) noexcept {
  switch (c) {
    case Command::fit: return "fit";
    case Command::crossings: return "crossings";
    case Command::infra: return "infra";
    case Command::sensitivity: return "sensitivity";
  }
  return "fit";
}

std::string_view format_name(Format f) noexcept {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::svg: return "svg";
  }
  return "json";
}

Command parse_command(std::string_view name) {
  for (const auto c : {Command::fit, Command::crossings, Command::infra, Command::sensitivity}) {
    if (command_name(c) == name) return c;
  }
  throw ValidationError("unknown command '" + std::string(name) + "'", 0, "command");
}

Format parse_format(std::string_view name) {
  for (const auto f : {Format::json, Format::csv, Format::svg}) {
    if (format_name(f) == name) return f;
  }
  throw ValidationError("unknown format '" + std::string(name) + "'", 0, "format");
}

std::string_view status_name(RegionStatus s) noexcept {
  switch (s) {
    case RegionStatus::fitted: return "fitted";
    case RegionStatus::failed: return "failed";
    case RegionStatus::ok: return "ok";
    case RegionStatus::no_data: return "no_data";
  }
  return "failed";
}

RunConfig RunConfig::normalized() const {
  RunConfig c = *this;
  for (const double p : c.thresholds) {
    if (!(p > 0.0 && p < 1.0)) {
      throw ValidationError("threshold must lie in (0, 1), got " + sig12(p), 0, "threshold");
    }
  }
  std::sort(c.thresholds.begin(), c.thresholds.end());
  c.thresholds.erase(std::unique(c.thresholds.begin(), c.thresholds.end()), c.thresholds.end());
  if (c.thresholds.empty()) c.thresholds = {0.5};

  std::sort(c.truncations.begin(), c.truncations.end());
  c.truncations.erase(std::unique(c.truncations.begin(), c.truncations.end()), c.truncations.end());
  for (const auto& q : c.truncations) {
    if (q.quarter < 1 || q.quarter > 4) throw ValidationError("bad truncation quarter", 0, "truncate");
  }
  if (c.epoch.quarter < 1 || c.epoch.quarter > 4) throw ValidationError("bad epoch quarter", 0, "epoch");
  if (c.horizon_quarters < 0 || c.horizon_quarters > kMaxHorizonQuarters) {
    throw ValidationError("horizon must lie in 0.." + std::to_string(kMaxHorizonQuarters) + " quarters", 0,
                          "horizon");
  }
  if (!std::isfinite(c.adequacy) || c.adequacy < 0.0) {
    throw ValidationError("adequacy threshold must be finite and >= 0", 0, "adequacy");
  }
  if (c.format == Format::svg && c.command != Command::fit && c.command != Command::crossings) {
    throw ValidationError("svg output is only available for fit and crossings", 0, "format");
  }
  return c;
}

bool RegionOutcome::succeeded() const noexcept {
  return status == RegionStatus::fitted || status == RegionStatus::ok;
}

std::size_t Report::succeeded() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(regions.begin(), regions.end(), [](const auto& r) { return r.succeeded(); }));
}

Report build_report(const RunConfig& config, std::optional<std::string_view> sales_csv,
                    std::optional<std::string_view> chargers_csv) {
  Report report;
  report.config = config.normalized();
  const auto& cfg = report.config;

  switch (cfg.command) {
    case Command::fit:
    case Command::crossings: {
      const bool crossings = cfg.command == Command::crossings;
      const auto series = sales_input(cfg, sales_csv);
      report.regions = parallel_map(series, [&](const AdoptionSeries& s) { return fit_region(s, cfg, crossings); });
      if (crossings) {
        for (std::size_t k = 0; k < cfg.thresholds.size(); ++k) {
          std::vector<CrossingReport> reports;
          for (const auto& o : report.regions) {
            if (o.succeeded()) reports.push_back(o.crossings[k]);
          }
          auto ranking = rank_regions(std::move(reports));
          ranking.threshold = cfg.thresholds[k];
          report.crossing_rankings.push_back(std::move(ranking));
        }
      }
      break;
    }
    case Command::sensitivity: {
      const auto series = sales_input(cfg, sales_csv);
      report.regions = parallel_map(series, [&](const AdoptionSeries& s) { return sensitivity_region(s, cfg); });
      break;
    }
    case Command::infra: {
      if (!chargers_csv) throw Error(ErrorCode::precondition, "infra needs a chargers CSV");
      std::vector<InfraMetric> ok;
      for (const auto& rec : parse_chargers_csv(*chargers_csv)) {
        RegionOutcome o;
        o.region = rec.region;
        o.charger = rec;
        try {
          o.infra = chargers_per_10_bev(rec, cfg.adequacy);
          o.status = RegionStatus::ok;
          ok.push_back(*o.infra);
        } catch (const Error& e) {
          o.status = RegionStatus::no_data;
          o.failure = e.code();
          o.message = e.what();
        }
        report.regions.push_back(std::move(o));
      }
      std::stable_sort(report.regions.begin(), report.regions.end(), [](const auto& a, const auto& b) {
        return canonical_region(a.region) < canonical_region(b.region);
      });
      report.infra_ranking = rank_infra(std::move(ok));
      break;
    }
  }
  return report;
}

Report run_command(const RunConfig& config) {
  std::optional<std::string> sales;
  std::optional<std::string> chargers;
  if (config.sales_path && config.command != Command::infra) sales = read_file(*config.sales_path);
  if (config.chargers_path && config.command == Command::infra) chargers = read_file(*config.chargers_path);
  return build_report(config, sales ? std::optional<std::string_view>(*sales) : std::nullopt,
                      chargers ? std::optional<std::string_view>(*chargers) : std::nullopt);
}

Report cmd_fit(const RunConfig& config) {
  auto c = config;
  c.command = Command::fit;
  return run_command(c);
}

Report cmd_crossings(const RunConfig& config) {
  auto c = config;
  c.command = Command::crossings;
  return run_command(c);
}

Report cmd_infra(const RunConfig& config) {
  auto c = config;
  c.command = Command::infra;
  return run_command(c);
}

Report cmd_sensitivity(const RunConfig& config) {
  auto c = config;
  c.command = Command::sensitivity;
  return run_command(c);
}

std::string render_json(const Report& report) {
  const auto& cfg = report.config;
  json regions = json::array();
  for (const auto& o : report.regions) regions.push_back(region_json(o, cfg.command));

  json rankings = json::array();
  for (const auto& r : report.crossing_rankings) {
    json order = json::array();
    for (const auto& c : r.order) order.push_back(c.region);
    rankings.push_back({{"threshold", num(r.threshold)}, {"order", order}, {"gap_years", num(r.gap_years)}});
  }
  if (cfg.command == Command::infra) {
    json order = json::array();
    for (const auto& m : report.infra_ranking) order.push_back(m.region);
    rankings.push_back({{"metric", "chargers_per_10_bev"}, {"adequacy", num(cfg.adequacy)}, {"order", order}});
  }

  const json doc = {
      {"version", {{"tool", tool_version()}, {"schema", kReportSchemaVersion}}},
      {"config", config_json(cfg)},
      {"regions", regions},
      {"rankings", rankings},
  };
  return doc.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
  std::string out;
  const auto line = [&out](std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) out += ',';
      out += c;
      first = false;
    }
    out += '\n';
  };

  switch (report.config.command) {
    case Command::fit:
      line({"region", "status", "reason", "alpha", "beta", "t_mid", "n_used", "n_excluded", "sse_logit", "t_min",
            "t_max"});
      for (const auto& o : report.regions) {
        if (o.fit) {
          const auto& f = *o.fit;
          line({o.region, std::string(status_name(o.status)), "", cell(f.params.alpha()), cell(f.params.beta()),
                cell(f.params.t_mid()), std::to_string(f.n_used), std::to_string(f.n_excluded), cell(f.sse_logit),
                cell(f.t_min), cell(f.t_max)});
        } else {
          line({o.region, std::string(status_name(o.status)), reason_cell(o.failure), "", "", "", "", "", "", "", ""});
        }
      }
      break;
    case Command::crossings:
      line({"region", "status", "reason", "threshold_pct", "crossing_t", "crossing_quarter", "crossing_year",
            "direction", "rank"});
      for (const auto& o : report.regions) {
        if (!o.succeeded()) {
          for (const double p : report.config.thresholds) {
            line({o.region, std::string(status_name(o.status)), reason_cell(o.failure), pct(p), "", "", "", "", ""});
          }
          continue;
        }
        for (std::size_t k = 0; k < o.crossings.size(); ++k) {
          const auto& c = o.crossings[k];
          const auto rank = rank_of(report.crossing_rankings.at(k), o.region);
          line({o.region, std::string(status_name(o.status)), "", pct(c.threshold), cell(c.crossing_t),
                cell(c.crossing_quarter), c.crossing_quarter ? std::to_string(c.crossing_quarter->year) : "",
                direction_name(c.direction), rank ? std::to_string(rank) : ""});
        }
      }
      break;
    case Command::infra:
      line({"region", "status", "as_of", "public_chargers", "bev_stock", "chargers_per_10_bev", "adequate", "rank"});
      for (const auto& o : report.regions) {
        std::string rank;
        for (std::size_t i = 0; i < report.infra_ranking.size(); ++i) {
          if (report.infra_ranking[i].region == o.region) rank = std::to_string(i + 1);
        }
        line({o.region, std::string(status_name(o.status)), o.charger ? o.charger->as_of.to_string() : "",
              o.charger ? std::to_string(o.charger->public_chargers) : "",
              o.charger ? std::to_string(o.charger->bev_stock) : "",
              o.infra ? cell(o.infra->ratio) : "", o.infra ? (o.infra->adequate ? "true" : "false") : "", rank});
      }
      break;
    case Command::sensitivity:
      line({"region", "threshold_pct", "truncation", "status", "reason", "n_used", "crossing_t", "crossing_quarter",
            "spread_quarters"});
      for (const auto& o : report.regions) {
        for (const auto& s : o.sensitivity) {
          for (const auto& r : s.rows) {
            line({o.region, pct(s.threshold), r.truncation.to_string(), r.fitted() ? "fitted" : "failed",
                  reason_cell(r.failure), std::to_string(r.n_used), cell(r.crossing_t), cell(r.crossing_quarter),
                  std::to_string(s.spread_quarters)});
          }
        }
      }
      break;
  }
  return out;
}

std::string render_svg(const Report& report) {
  const auto cmd = report.config.command;
  if (cmd != Command::fit && cmd != Command::crossings) {
    throw ValidationError("svg output is only available for fit and crossings", 0, "format");
  }
  std::vector<std::pair<ForecastSeries, AdoptionSeries>> panels;
  for (const auto& o : report.regions) {
    if (o.forecast) panels.emplace_back(*o.forecast, o.observed);
  }
  if (panels.empty()) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"40\" viewBox=\"0 0 720 40\">\n"
           "<text x=\"10\" y=\"24\">no fitted regions</text>\n</svg>\n";
  }
  return emit_svg_panels(panels);
}

std::string render(const Report& report) {
  switch (report.config.format) {
    case Format::json: return render_json(report);
    case Format::csv: return render_csv(report);
    case Format::svg: return render_svg(report);
  }
  return render_json(report);
}

}  // namespace evscurve
