#pragma once

// Minimal SVG line chart for a ComparisonTable: complementary probabilities on a log10
// axis against time. Output depends only on the table and options.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "table.hpp"

namespace redundancy {

struct ChartOptions {
  int width = 720;
  int height = 480;
  double y_floor = 1e-8;  // smallest probability drawn; lower values are clipped
  std::string title = "Complementary batch completion time";
};

namespace detail {

inline std::string fixed(double v, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace detail

inline std::string render_svg(const ComparisonTable& table, const ChartOptions& opt = {}) {
  static constexpr std::array<const char*, 8> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                         "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  const double left = 70, right = 170, top = 40, bottom = 50;
  const double plot_w = opt.width - left - right;
  const double plot_h = opt.height - top - bottom;
  const double t0 = table.times.empty() ? 0.0 : table.times.front();
  const double t1 = table.times.empty() ? 1.0 : std::max(table.times.back(), t0 + 1e-12);
  const double decades = std::max(1.0, std::ceil(-std::log10(opt.y_floor)));
  auto px = [&](double t) { return left + (t - t0) / (t1 - t0) * plot_w; };
  auto py = [&](double p) {
    const double lp = std::clamp(std::log10(std::max(p, opt.y_floor)), -decades, 0.0);
    return top + (-lp / decades) * plot_h;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<desc>";
  for (const auto& m : table.metadata) os << detail::xml_escape(m) << ';';
  os << "</desc>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << detail::fixed(left) << "\" y=\"24\" font-size=\"14\">" << detail::xml_escape(opt.title);
  if (auto lam = table.metadata_value("lambda")) os << " (lambda=" << detail::xml_escape(*lam) << ")";
  os << "</text>\n";

  // Axes and ticks.
  os << "<g stroke=\"black\" fill=\"none\"><rect x=\"" << detail::fixed(left) << "\" y=\"" << detail::fixed(top)
     << "\" width=\"" << detail::fixed(plot_w) << "\" height=\"" << detail::fixed(plot_h) << "\"/></g>\n";
  for (int e = 0; e <= static_cast<int>(decades); ++e) {
    const double y = top + e / decades * plot_h;
    os << "<line x1=\"" << detail::fixed(left - 4) << "\" y1=\"" << detail::fixed(y) << "\" x2=\""
       << detail::fixed(left + plot_w) << "\" y2=\"" << detail::fixed(y) << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << detail::fixed(left - 8) << "\" y=\"" << detail::fixed(y + 4)
       << "\" text-anchor=\"end\">1e-" << e << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double t = t0 + (t1 - t0) * i / 5.0;
    const double x = px(t);
    os << "<line x1=\"" << detail::fixed(x) << "\" y1=\"" << detail::fixed(top + plot_h) << "\" x2=\""
       << detail::fixed(x) << "\" y2=\"" << detail::fixed(top + plot_h + 4) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << detail::fixed(x) << "\" y=\"" << detail::fixed(top + plot_h + 18)
       << "\" text-anchor=\"middle\">" << detail::fixed(t) << "</text>\n";
  }
  os << "<text x=\"" << detail::fixed(left + plot_w / 2) << "\" y=\"" << detail::fixed(opt.height - 10.0)
     << "\" text-anchor=\"middle\">t</text>\n";
  os << "<text transform=\"translate(16," << detail::fixed(top + plot_h / 2) << ") rotate(-90)\""
     << " text-anchor=\"middle\">P(completion &gt; t)</text>\n";

  // Series. Replication dashed, band edges thin and dotted, everything else solid.
  std::size_t series = 0;
  double legend_y = top + 10;
  for (const auto& col : table.columns) {
    const bool band = detail::ends_with(col.name, "_lo") || detail::ends_with(col.name, "_hi");
    const bool dashed = col.name.rfind("rep_", 0) == 0;
    const char* color = palette[series % palette.size()];
    std::ostringstream path;
    bool pen_down = false;
    for (std::size_t i = 0; i < table.times.size(); ++i) {
      if (!col.values[i]) {
        pen_down = false;
        continue;
      }
      path << (pen_down ? " L" : " M") << detail::fixed(px(table.times[i])) << ' '
           << detail::fixed(py(*col.values[i]));
      pen_down = true;
    }
    os << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << (band ? "0.8" : "1.8") << "\"";
    if (dashed) os << " stroke-dasharray=\"6 4\"";
    if (band) os << " stroke-dasharray=\"2 3\"";
    os << " d=\"" << path.str() << "\"/>\n";
    if (!band) {
      const double lx = left + plot_w + 12;
      os << "<line x1=\"" << detail::fixed(lx) << "\" y1=\"" << detail::fixed(legend_y) << "\" x2=\""
         << detail::fixed(lx + 24) << "\" y2=\"" << detail::fixed(legend_y) << "\" stroke=\"" << color
         << "\" stroke-width=\"1.8\"" << (dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
      os << "<text x=\"" << detail::fixed(lx + 30) << "\" y=\"" << detail::fixed(legend_y + 4) << "\">"
         << detail::xml_escape(col.name) << "</text>\n";
      legend_y += 18;
    }
    // Keep a band's colour tied to its series: advance only on the _hi edge or plain columns.
    if (!detail::ends_with(col.name, "_lo") && !detail::ends_with(col.name, "_mid")) ++series;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace redundancy
