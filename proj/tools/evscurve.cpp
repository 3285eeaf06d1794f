// evscurve: logistic adoption-curve fitting, threshold-crossing forecasts,
// truncation sensitivity and charger adequacy for regional EV data.

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evscurve/error.hpp"
#include "evscurve/report.hpp"

namespace {

using namespace evscurve;

double parse_fraction(const std::string& text, const char* option) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError(std::string(option) + ": not a number '" + text + "'", 0, option);
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fit logistic s-curves to regional EV adoption data and forecast threshold crossings"};
  app.set_version_flag("--version", std::string(tool_version()));

  std::string command;
  std::string sales;
  std::string chargers;
  std::string epoch = "2011Q1";
  std::vector<std::string> thresholds;
  int horizon = kDefaultHorizonQuarters;
  std::string format = "json";
  std::string out;
  std::vector<std::string> truncations;
  std::string adequacy = "1.0";

  app.add_option("command", command, "fit | crossings | infra | sensitivity")
      ->required()
      ->check(CLI::IsMember({"fit", "crossings", "infra", "sensitivity"}));
  app.add_option("--sales", sales, "sales CSV (region,year,quarter,bev_sales,total_sales)");
  app.add_option("--chargers", chargers, "charger CSV (region,year,quarter,public_chargers,bev_stock)");
  app.add_option("--epoch", epoch, "quarter mapped to t = 0, as YYYYQn")->capture_default_str();
  app.add_option("--threshold", thresholds, "adoption share in (0,1); repeatable (default 0.5)")
      ->expected(1)
      ->take_all();
  app.add_option("--horizon", horizon, "forecast quarters past the last observation")->capture_default_str();
  app.add_option("--format", format, "json | csv | svg")
      ->check(CLI::IsMember({"json", "csv", "svg"}))
      ->capture_default_str();
  app.add_option("--out", out, "output path (default: standard output)");
  app.add_option("--truncate", truncations, "truncation quarter YYYYQn; repeatable")->expected(1)->take_all();
  app.add_option("--adequacy", adequacy, "chargers per 10 BEVs counted as adequate")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig config;
  try {
    config.command = parse_command(command);
    config.format = parse_format(format);
    config.epoch = TimePoint::parse(epoch);
    config.horizon_quarters = horizon;
    config.adequacy = parse_fraction(adequacy, "--adequacy");
    for (const auto& t : thresholds) config.thresholds.push_back(parse_fraction(t, "--threshold"));
    for (const auto& q : truncations) config.truncations.push_back(TimePoint::parse(q));
    if (!sales.empty()) config.sales_path = sales;
    if (!chargers.empty()) config.chargers_path = chargers;
    if (!out.empty()) config.out_path = out;
    if (config.command == Command::infra && !config.chargers_path) {
      throw ValidationError("infra requires --chargers", 0, "chargers");
    }
    if (config.command != Command::infra && !config.sales_path) {
      throw ValidationError(command + " requires --sales", 0, "sales");
    }
    config = config.normalized();
  } catch (const Error& e) {
    std::cerr << "evscurve: " << e.what() << "\n";
    return kExitUsage;
  }

  Report report;
  std::string rendered;
  try {
    report = run_command(config);
    rendered = render(report);
  } catch (const Error& e) {
    std::cerr << "evscurve: " << e.what() << "\n";
    return kExitInput;
  }

  if (config.out_path) {
    std::ofstream file(*config.out_path, std::ios::binary);
    if (!file || !(file << rendered) || !file.flush()) {
      std::cerr << "evscurve: cannot write '" << *config.out_path << "'\n";
      return kExitInput;
    }
  } else {
    std::cout << rendered << std::flush;
  }

  for (const auto& region : report.regions) {
    if (!region.succeeded()) {
      std::cerr << "evscurve: " << region.region << ": " << status_name(region.status) << ": " << region.message
                << "\n";
    }
  }
  return report.succeeded() > 0 ? kExitOk : kExitNoRegion;
}
