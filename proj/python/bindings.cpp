#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "evscurve/error.hpp"
#include "evscurve/fit.hpp"
#include "evscurve/forecast.hpp"
#include "evscurve/infra.hpp"
#include "evscurve/ingest.hpp"
#include "evscurve/report.hpp"
#include "evscurve/scurve.hpp"
#include "evscurve/svg.hpp"

namespace py = pybind11;
using namespace evscurve;

namespace {

std::string run(const std::string& command, std::optional<std::string> sales_csv,
                std::optional<std::string> chargers_csv, const std::string& epoch, std::vector<double> thresholds,
                int horizon, const std::string& format, std::vector<std::string> truncations, double adequacy) {
  RunConfig cfg;
  cfg.command = parse_command(command);
  cfg.format = parse_format(format);
  cfg.epoch = TimePoint::parse(epoch);
  cfg.thresholds = std::move(thresholds);
  cfg.horizon_quarters = horizon;
  for (const auto& q : truncations) cfg.truncations.push_back(TimePoint::parse(q));
  cfg.adequacy = adequacy;
  const auto view = [](const std::optional<std::string>& s) {
    return s ? std::optional<std::string_view>(*s) : std::nullopt;
  };
  return render(build_report(cfg, view(sales_csv), view(chargers_csv)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Logistic s-curve fitting and forecasting for regional EV adoption data";
  m.attr("__version__") = std::string(tool_version());

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", base.ptr());

  py::class_<TimePoint>(m, "TimePoint")
      .def(py::init<int, int>(), py::arg("year"), py::arg("quarter"))
      .def_readwrite("year", &TimePoint::year)
      .def_readwrite("quarter", &TimePoint::quarter)
      .def_static("parse", &TimePoint::parse)
      .def("index", &TimePoint::index)
      .def("t", [](const TimePoint& q, const TimePoint& epoch) { return quarter_to_time(q, epoch); },
           py::arg("epoch") = kDefaultEpoch)
      .def("__str__", &TimePoint::to_string)
      .def("__repr__", [](const TimePoint& q) { return "TimePoint('" + q.to_string() + "')"; })
      .def("__eq__", [](const TimePoint& a, const TimePoint& b) { return a == b; })
      .def("__lt__", [](const TimePoint& a, const TimePoint& b) { return a < b; })
      .def("__hash__", [](const TimePoint& q) { return q.index(); });

  m.def("quarter_to_time", py::overload_cast<int, int, Epoch>(&quarter_to_time), py::arg("year"),
        py::arg("quarter"), py::arg("epoch") = kDefaultEpoch);
  m.def("compute_share", &compute_share, py::arg("bev_sales"), py::arg("total_sales"));

  py::class_<AdoptionObservation>(m, "AdoptionObservation")
      .def(py::init([](TimePoint q, std::uint64_t bev, std::uint64_t total) {
             return AdoptionObservation{q, bev, total};
           }),
           py::arg("time"), py::arg("bev_sales"), py::arg("total_sales"))
      .def_readonly("time", &AdoptionObservation::time)
      .def_readonly("bev_sales", &AdoptionObservation::bev_sales)
      .def_readonly("total_sales", &AdoptionObservation::total_sales)
      .def_property_readonly("share", &AdoptionObservation::share);

  py::class_<AdoptionSeries>(m, "AdoptionSeries")
      .def(py::init<std::string, std::vector<AdoptionObservation>, Epoch>(), py::arg("region"),
           py::arg("observations"), py::arg("epoch") = kDefaultEpoch)
      .def_property_readonly("region", &AdoptionSeries::region)
      .def_property_readonly("observations", &AdoptionSeries::observations)
      .def_property_readonly("epoch", &AdoptionSeries::epoch)
      .def("truncated", &AdoptionSeries::truncated)
      .def("__len__", &AdoptionSeries::size)
      .def("__eq__", [](const AdoptionSeries& a, const AdoptionSeries& b) { return a == b; });

  py::class_<ChargerRecord>(m, "ChargerRecord")
      .def(py::init([](std::string region, std::uint64_t chargers, std::uint64_t stock, TimePoint as_of) {
             return ChargerRecord{std::move(region), chargers, stock, as_of};
           }),
           py::arg("region"), py::arg("public_chargers"), py::arg("bev_stock"), py::arg("as_of"))
      .def_readonly("region", &ChargerRecord::region)
      .def_readonly("public_chargers", &ChargerRecord::public_chargers)
      .def_readonly("bev_stock", &ChargerRecord::bev_stock)
      .def_readonly("as_of", &ChargerRecord::as_of);

  m.def("parse_sales_csv", &parse_sales_csv, py::arg("text"), py::arg("epoch") = kDefaultEpoch);
  m.def("parse_chargers_csv", &parse_chargers_csv, py::arg("text"));
  m.def("serialize_sales_csv", &serialize_sales_csv, py::arg("series"));
  m.def("aggregate_series", &aggregate_series, py::arg("series"), py::arg("region"));

  py::class_<LogisticParams>(m, "LogisticParams")
      .def(py::init<double, double>(), py::arg("alpha"), py::arg("beta"))
      .def_static("from_log_alpha", &LogisticParams::from_log_alpha, py::arg("ln_alpha"), py::arg("beta"))
      .def_property_readonly("alpha", &LogisticParams::alpha)
      .def_property_readonly("ln_alpha", &LogisticParams::ln_alpha)
      .def_property_readonly("beta", &LogisticParams::beta)
      .def_property_readonly("t_mid", &LogisticParams::t_mid);

  py::enum_<Direction>(m, "Direction")
      .value("up", Direction::up)
      .value("down", Direction::down)
      .value("none", Direction::none);

  m.def("logistic_eval", &logistic_eval, py::arg("params"), py::arg("t"));
  m.def("logit", &logit, py::arg("y"));
  m.def(
      "crossing_time",
      [](const LogisticParams& p, double threshold) {
        const auto c = crossing_time(p, threshold);
        return py::make_tuple(c.t, c.direction);
      },
      py::arg("params"), py::arg("p"));
  m.def("params_from_line", &params_from_line, py::arg("slope"), py::arg("intercept"));

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("params", &FitResult::params)
      .def_readonly("n_used", &FitResult::n_used)
      .def_readonly("n_excluded", &FitResult::n_excluded)
      .def_readonly("sse_logit", &FitResult::sse_logit)
      .def_readonly("t_min", &FitResult::t_min)
      .def_readonly("t_max", &FitResult::t_max);

  m.def("fit_logit_ols", py::overload_cast<const AdoptionSeries&>(&fit_logit_ols), py::arg("series"));
  m.def(
      "fit_grid_search",
      [](const AdoptionSeries& s, std::pair<double, double> beta, std::pair<double, double> ln_alpha,
         std::size_t steps) {
        return fit_grid_search(s, {beta.first, beta.second}, {ln_alpha.first, ln_alpha.second}, steps);
      },
      py::arg("series"), py::arg("beta_range"), py::arg("ln_alpha_range"), py::arg("steps"));
  m.def(
      "residuals",
      [](const AdoptionSeries& s, const LogisticParams& p) {
        std::vector<std::pair<double, double>> out;
        for (const auto& r : residuals(s, p).points) out.emplace_back(r.t, r.value);
        return out;
      },
      py::arg("series"), py::arg("params"));

  py::class_<ForecastPoint>(m, "ForecastPoint")
      .def_readonly("quarter", &ForecastPoint::quarter)
      .def_readonly("t", &ForecastPoint::t)
      .def_readonly("share", &ForecastPoint::share);
  py::class_<ForecastSeries>(m, "ForecastSeries")
      .def_readonly("region", &ForecastSeries::region)
      .def_readonly("params", &ForecastSeries::params)
      .def_readonly("points", &ForecastSeries::points);
  m.def("forecast_series", &forecast_series, py::arg("params"), py::arg("start"), py::arg("end"),
        py::arg("epoch") = kDefaultEpoch, py::arg("region") = std::string());

  py::class_<CrossingReport>(m, "CrossingReport")
      .def_readonly("region", &CrossingReport::region)
      .def_readonly("threshold", &CrossingReport::threshold)
      .def_readonly("crossing_t", &CrossingReport::crossing_t)
      .def_readonly("crossing_quarter", &CrossingReport::crossing_quarter)
      .def_readonly("direction", &CrossingReport::direction);
  m.def("crossing_quarter", &crossing_quarter, py::arg("params"), py::arg("threshold"),
        py::arg("epoch") = kDefaultEpoch, py::arg("region") = std::string());

  py::class_<Ranking>(m, "Ranking")
      .def_readonly("threshold", &Ranking::threshold)
      .def_readonly("order", &Ranking::order)
      .def_readonly("gap_years", &Ranking::gap_years);
  m.def("rank_regions", &rank_regions, py::arg("reports"));

  py::class_<SensitivityRow>(m, "SensitivityRow")
      .def_readonly("truncation", &SensitivityRow::truncation)
      .def_readonly("n_used", &SensitivityRow::n_used)
      .def_readonly("crossing_t", &SensitivityRow::crossing_t)
      .def_readonly("crossing_quarter", &SensitivityRow::crossing_quarter)
      .def_property_readonly("fitted", &SensitivityRow::fitted)
      .def_property_readonly("reason", [](const SensitivityRow& r) -> std::optional<std::string> {
        if (!r.failure) return std::nullopt;
        return std::string(code_name(*r.failure));
      });
  py::class_<SensitivityReport>(m, "SensitivityReport")
      .def_readonly("region", &SensitivityReport::region)
      .def_readonly("threshold", &SensitivityReport::threshold)
      .def_readonly("rows", &SensitivityReport::rows)
      .def_readonly("spread_quarters", &SensitivityReport::spread_quarters);
  m.def(
      "truncation_sensitivity",
      [](const AdoptionSeries& s, double threshold, const std::vector<TimePoint>& cuts) {
        return truncation_sensitivity(s, threshold, cuts);
      },
      py::arg("series"), py::arg("threshold"), py::arg("truncations"));

  py::class_<InfraMetric>(m, "InfraMetric")
      .def_readonly("region", &InfraMetric::region)
      .def_readonly("ratio", &InfraMetric::ratio)
      .def_readonly("adequate", &InfraMetric::adequate)
      .def_readonly("as_of", &InfraMetric::as_of);
  m.def("chargers_per_10_bev", &chargers_per_10_bev, py::arg("record"), py::arg("adequacy") = kDefaultAdequacy);
  m.def("rank_infra", &rank_infra, py::arg("metrics"));

  m.def("emit_svg_plot", [](const ForecastSeries& f, const AdoptionSeries& obs) { return emit_svg_plot(f, obs); },
        py::arg("forecast"), py::arg("observations"));

  m.def("run", &run, py::arg("command"), py::arg("sales_csv") = std::nullopt,
        py::arg("chargers_csv") = std::nullopt, py::arg("epoch") = "2011Q1",
        py::arg("thresholds") = std::vector<double>{}, py::arg("horizon") = kDefaultHorizonQuarters,
        py::arg("format") = "json", py::arg("truncations") = std::vector<std::string>{},
        py::arg("adequacy") = kDefaultAdequacy,
        "Run a command over in-memory CSV text and return the rendered report.");
}
