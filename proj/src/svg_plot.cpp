#include "amortis/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <fmt/core.h>
#include <limits>

#include "amortis/common.hpp"

namespace amortis {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 5;
constexpr std::array<std::string_view, 4> kColours{"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string escape(std::string_view text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo <= 0.0) {
      const double half = lo == 0.0 ? 1.0 : std::abs(lo) * 0.05;
      lo -= half;
      hi += half;
    }
  }
};

}  // namespace

std::string plot_data(const PlotSeries& series, std::string_view x_label) {
  std::string out = fmt::format("# {} {}\n", x_label, series.label);
  for (std::size_t k = 0; k < series.x.size(); ++k) {
    out += fmt::format("{} {:.6f}\n", series.x[k], series.y[k]);
  }
  return out;
}

std::string line_chart_svg(std::string_view title, std::string_view x_label,
                           std::string_view y_label, std::span<const PlotSeries> series) {
  detail::require(!series.empty(), "plot needs at least one series");
  Extent xs;
  Extent ys;
  for (const PlotSeries& s : series) {
    detail::require(s.x.size() == s.y.size() && !s.x.empty(),
                    "plot series needs matching, non-empty x and y");
    for (double v : s.x) xs.include(v);
    for (double v : s.y) ys.include(v);
  }
  xs.pad();
  ys.pad();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xs.lo) / (xs.hi - xs.lo) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - ys.lo) / (ys.hi - ys.lo) * plot_h; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{3}</text>\n",
      kWidth, kHeight, kWidth / 2, escape(title));

  svg += fmt::format(
      "<g stroke=\"black\" stroke-width=\"1\">"
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>"
      "<line x1=\"{0}\" y1=\"{3}\" x2=\"{0}\" y2=\"{1}\"/></g>\n",
      kLeft, kTop + plot_h, kLeft + plot_w, kTop);

  for (int t = 0; t < kTicks; ++t) {
    const double fx = xs.lo + (xs.hi - xs.lo) * t / (kTicks - 1);
    const double fy = ys.lo + (ys.hi - ys.lo) * t / (kTicks - 1);
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>"
        "<text x=\"{0:.2f}\" y=\"{3:.2f}\" text-anchor=\"middle\">{4:.6g}</text>\n",
        px(fx), kTop + plot_h, kTop + plot_h + 5, kTop + plot_h + 20, fx);
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#ccc\"/>"
        "<text x=\"{3:.2f}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:.6g}</text>\n",
        kLeft, py(fy), kLeft + plot_w, kLeft - 6, py(fy) + 4, fy);
  }
  svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + plot_w / 2, kHeight - 15, escape(x_label));
  svg += fmt::format(
      "<text x=\"16\" y=\"{0:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0:.2f})\">"
      "{1}</text>\n",
      kTop + plot_h / 2, escape(y_label));

  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const std::string_view colour = kColours[k % kColours.size()];
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      points += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", px(s.x[i]), py(s.y[i]));
    }
    svg += fmt::format(
        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", colour,
        points);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" fill=\"{}\">{}</text>\n", kLeft + 10,
                       kTop + 16 + 16.0 * static_cast<double>(k), colour, escape(s.label));
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace amortis
