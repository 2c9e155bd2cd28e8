#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "../profile.hpp"

namespace aniso::io {

/// Line plot of several profiles on shared axes (angle on x, value on y).
inline std::string profiles_svg(const std::vector<std::pair<std::string, AngularProfile>>& series,
                                const std::string& title = "") {
  constexpr double kW = 640, kH = 400, kLeft = 60, kRight = 20, kTop = 30, kBottom = 40;
  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  double ymax = 0.0;
  for (const auto& [name, p] : series)
    for (double v : p.values) ymax = std::max(ymax, v);
  if (ymax <= 0.0) ymax = 1.0;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  auto px = [&](double angle) { return kLeft + pw * angle / 180.0; };
  auto py = [&](double v) { return kTop + ph * (1.0 - v / ymax); };
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
                "font-family=\"sans-serif\" font-size=\"12\">\n",
                kW, kH);
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"18\">", kLeft);
    out += buf + title + "</text>\n";
  }
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                kLeft, kTop, pw, ph);
  out += buf;
  for (int a = 0; a <= 180; a += 45) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%g\" text-anchor=\"middle\">%d</text>\n",
                  px(a), kH - kBottom + 16, a);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">angle (deg)</text>\n",
                kLeft + pw / 2, kH - 6);
  out += buf;
  std::snprintf(buf, sizeof buf, "<text x=\"4\" y=\"%g\">%.3g</text>\n", kTop + 4, ymax);
  out += buf;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& [name, p] = series[s];
    const char* color = kColors[s % std::size(kColors)];
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.5\" points=\"";
    for (int m = 0; m < p.size(); ++m) {
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", m ? " " : "", px(p.angle(m)), py(p.values[m]));
      out += buf;
    }
    out += "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" fill=\"%s\">", kW - kRight - 90,
                  kTop + 16 + 16.0 * s, color);
    out += buf + name + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace aniso::io
