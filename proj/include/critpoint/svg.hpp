#pragma once

#include <string>
#include <utility>
#include <vector>

namespace critpoint {

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;  // positive values, log-log
};

// Straight guide line in log-log space through (x0, y0) with the given slope.
struct SvgGuide {
  double slope = 0.0;
  double x0 = 1.0;
  double y0 = 1.0;
  std::string label;
};

struct SvgPlot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<SvgSeries> series;
  std::vector<SvgGuide> guides;
  int width = 720;
  int height = 480;
};

std::string render_loglog_svg(const SvgPlot& plot);
void write_loglog_svg(const std::string& path, const SvgPlot& plot);

}  // namespace critpoint
