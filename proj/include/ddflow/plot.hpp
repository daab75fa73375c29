#pragma once

#include <span>
#include <string>
#include <vector>

namespace ddflow {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 800;
  int height = 480;
};

// Self-contained static SVG line chart: axes with ticks, a legend and one
// polyline per series. Output depends only on the inputs.
std::string render_svg(const PlotSpec& spec, std::span<const PlotSeries> series);

}  // namespace ddflow
