#include "evscurve/svg.hpp"

#include <algorithm>
#include <cmath>

#include "evscurve/error.hpp"
#include "format.hpp"

namespace evscurve {

namespace {

using detail::fixed;

std::string escape_xml(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

double calendar_year(TimePoint q) { return q.year + (q.quarter - 1) / 4.0; }

void render_panel(std::string& out, const ForecastSeries& forecast, const AdoptionSeries& observations,
                  const SvgLayout& L, double y_offset) {
  if (forecast.points.empty()) throw Error(ErrorCode::precondition, "cannot plot an empty forecast");

  double x_lo = calendar_year(forecast.points.front().quarter);
  double x_hi = calendar_year(forecast.points.back().quarter);
  for (const auto& obs : observations.observations()) {
    x_lo = std::min(x_lo, calendar_year(obs.time));
    x_hi = std::max(x_hi, calendar_year(obs.time));
  }
  if (x_hi - x_lo < 1.0) {
    const double mid = (x_lo + x_hi) / 2.0;
    x_lo = mid - 0.5;
    x_hi = mid + 0.5;
  }
  const auto px = [&](double year) { return L.left + (year - x_lo) / (x_hi - x_lo) * L.plot_width(); };
  const auto py = [&](double share) { return L.top + (1.0 - share) * L.plot_height(); };
  const double x_axis = L.top + L.plot_height();

  out += "<g transform=\"translate(0," + fixed(y_offset, 2) + ")\">\n";
  out += "<text class=\"title\" x=\"" + fixed(L.left, 2) + "\" y=\"" + fixed(L.top - 14.0, 2) + "\">" +
         escape_xml(forecast.region.empty() ? observations.region() : forecast.region) + "</text>\n";

  // Axes, gridlines and tick labels.
  out += "<g class=\"axes\">\n";
  out += "<line x1=\"" + fixed(L.left, 2) + "\" y1=\"" + fixed(x_axis, 2) + "\" x2=\"" +
         fixed(L.left + L.plot_width(), 2) + "\" y2=\"" + fixed(x_axis, 2) + "\"/>\n";
  out += "<line x1=\"" + fixed(L.left, 2) + "\" y1=\"" + fixed(L.top, 2) + "\" x2=\"" + fixed(L.left, 2) +
         "\" y2=\"" + fixed(x_axis, 2) + "\"/>\n";
  for (int pct = 0; pct <= 100; pct += 20) {
    const double y = py(pct / 100.0);
    out += "<line class=\"grid\" x1=\"" + fixed(L.left, 2) + "\" y1=\"" + fixed(y, 2) + "\" x2=\"" +
           fixed(L.left + L.plot_width(), 2) + "\" y2=\"" + fixed(y, 2) + "\"/>\n";
    out += "<text class=\"ytick\" x=\"" + fixed(L.left - 6.0, 2) + "\" y=\"" + fixed(y + 4.0, 2) + "\">" +
           std::to_string(pct) + "%</text>\n";
  }
  const int span = static_cast<int>(std::ceil(x_hi - x_lo));
  const int step = std::max(1, (span + 9) / 10);
  for (int year = static_cast<int>(std::ceil(x_lo)); year <= static_cast<int>(std::floor(x_hi)); ++year) {
    if (year % step != 0) continue;
    const double x = px(year);
    out += "<line x1=\"" + fixed(x, 2) + "\" y1=\"" + fixed(x_axis, 2) + "\" x2=\"" + fixed(x, 2) + "\" y2=\"" +
           fixed(x_axis + 5.0, 2) + "\"/>\n";
    out += "<text class=\"xtick\" x=\"" + fixed(x, 2) + "\" y=\"" + fixed(x_axis + 18.0, 2) + "\">" +
           std::to_string(year) + "</text>\n";
  }
  out += "<text class=\"xlabel\" x=\"" + fixed(L.left + L.plot_width() / 2.0, 2) + "\" y=\"" +
         fixed(L.height - 10.0, 2) + "\">Calendar year</text>\n";
  out += "<text class=\"ylabel\" transform=\"translate(16," + fixed(L.top + L.plot_height() / 2.0, 2) +
         ") rotate(-90)\">Share of new vehicle sales (%)</text>\n";
  out += "</g>\n";

  out += "<path class=\"forecast\" d=\"";
  bool first = true;
  for (const auto& p : forecast.points) {
    out += first ? "M" : " L";
    out += fixed(px(calendar_year(p.quarter)), 2) + "," + fixed(py(p.share), 2);
    first = false;
  }
  out += "\"/>\n";

  out += "<g class=\"observed\">\n";
  for (const auto& obs : observations.observations()) {
    const auto share = obs.share();
    if (!share) continue;
    out += "<circle cx=\"" + fixed(px(calendar_year(obs.time)), 2) + "\" cy=\"" + fixed(py(*share), 2) +
           "\" r=\"2.5\"/>\n";
  }
  out += "</g>\n</g>\n";
}

std::string open_document(const SvgLayout& L, double total_height) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(L.width, 0) + "\" height=\"" +
         fixed(total_height, 0) + "\" viewBox=\"0 0 " + fixed(L.width, 0) + " " + fixed(total_height, 0) + "\">\n";
  out +=
      "<style>text{font-family:sans-serif;font-size:11px}.title{font-size:14px;font-weight:bold}"
      ".ytick{text-anchor:end}.xtick,.xlabel,.ylabel{text-anchor:middle}line{stroke:#333}"
      ".grid{stroke:#ddd}.forecast{fill:none;stroke:#1f77b4;stroke-width:2}.observed circle{fill:#d62728}"
      "</style>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out;
}

}  // namespace

std::string emit_svg_plot(const ForecastSeries& forecast, const AdoptionSeries& observations,
                          const SvgLayout& layout) {
  if (forecast.points.empty()) throw Error(ErrorCode::precondition, "cannot plot an empty forecast");
  auto out = open_document(layout, layout.height);
  render_panel(out, forecast, observations, layout, 0.0);
  out += "</svg>\n";
  return out;
}

std::string emit_svg_panels(const std::vector<std::pair<ForecastSeries, AdoptionSeries>>& panels,
                            const SvgLayout& layout) {
  if (panels.empty()) throw Error(ErrorCode::precondition, "no panels to plot");
  auto out = open_document(layout, layout.height * static_cast<double>(panels.size()));
  for (std::size_t i = 0; i < panels.size(); ++i) {
    render_panel(out, panels[i].first, panels[i].second, layout, layout.height * static_cast<double>(i));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace evscurve
