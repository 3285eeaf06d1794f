#pragma once

#include <string>
#include <utility>
#include <vector>

#include "evscurve/forecast.hpp"
#include "evscurve/ingest.hpp"

namespace evscurve {

/// Panel geometry in SVG user units. The y axis always spans 0-100 %, so a
/// share s is drawn at y = top + (1 - s) * plot_height().
struct SvgLayout {
  double width = 720.0;
  double height = 420.0;
  double left = 64.0;
  double right = 24.0;
  double top = 40.0;
  double bottom = 56.0;

  [[nodiscard]] double plot_width() const noexcept { return width - left - right; }
  [[nodiscard]] double plot_height() const noexcept { return height - top - bottom; }
};

/// Standalone SVG: observed shares as circles, the forecast as one path,
/// calendar year on x, percent of new sales on y. Coordinates are written with
/// two decimals. Throws Error(precondition) for an empty forecast.
std::string emit_svg_plot(const ForecastSeries& forecast, const AdoptionSeries& observations,
                          const SvgLayout& layout = {});

/// Several panels stacked vertically in one document.
std::string emit_svg_panels(const std::vector<std::pair<ForecastSeries, AdoptionSeries>>& panels,
                            const SvgLayout& layout = {});

}  // namespace evscurve
