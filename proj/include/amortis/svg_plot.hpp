#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amortis {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Two whitespace-separated columns, one point per line, `#` header.
std::string plot_data(const PlotSeries& series, std::string_view x_label);

/// Standalone SVG line chart with linear axes and five ticks per axis.
std::string line_chart_svg(std::string_view title, std::string_view x_label,
                           std::string_view y_label, std::span<const PlotSeries> series);

}  // namespace amortis
