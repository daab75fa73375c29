#include "ddflow/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "ddflow/errors.hpp"

namespace ddflow {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};
constexpr std::size_t kMaxPointsPerSeries = 2000;

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// 1-2-5 tick spacing giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return step * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string render_svg(const PlotSpec& spec, std::span<const PlotSeries> series) {
  for (const auto& s : series)
    if (s.x.size() != s.y.size()) throw DimensionMismatch("render_svg: series '" + s.label + "' has mismatched x/y");

  Range xr, yr;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xr.include(s.x[i]);
      yr.include(s.y[i]);
    }
  xr.finish();
  yr.finish();
  const double ypad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= ypad;
  yr.hi += ypad;

  const double left = 70, right = 20, top = 40, bottom = 55;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;
  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape_xml(spec.title)
      << "</text>\n";

  // axes box
  out << "<rect x=\"" << fmt("%.2f", left) << "\" y=\"" << fmt("%.2f", top) << "\" width=\"" << fmt("%.2f", pw)
      << "\" height=\"" << fmt("%.2f", ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xstep = nice_step(xr.hi - xr.lo, 8);
  for (double v = std::ceil(xr.lo / xstep) * xstep; v <= xr.hi + 1e-9 * xstep; v += xstep) {
    const double x = px(v);
    out << "<line x1=\"" << fmt("%.2f", x) << "\" y1=\"" << fmt("%.2f", top + ph) << "\" x2=\"" << fmt("%.2f", x)
        << "\" y2=\"" << fmt("%.2f", top + ph + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt("%.2f", x) << "\" y=\"" << fmt("%.2f", top + ph + 18) << "\" text-anchor=\"middle\">"
        << fmt("%g", std::abs(v) < 1e-12 * xstep ? 0.0 : v) << "</text>\n";
  }
  const double ystep = nice_step(yr.hi - yr.lo, 6);
  for (double v = std::ceil(yr.lo / ystep) * ystep; v <= yr.hi + 1e-9 * ystep; v += ystep) {
    const double y = py(v);
    out << "<line x1=\"" << fmt("%.2f", left - 5) << "\" y1=\"" << fmt("%.2f", y) << "\" x2=\"" << fmt("%.2f", left)
        << "\" y2=\"" << fmt("%.2f", y) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt("%.2f", left) << "\" y1=\"" << fmt("%.2f", y) << "\" x2=\"" << fmt("%.2f", left + pw)
        << "\" y2=\"" << fmt("%.2f", y) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << fmt("%.2f", left - 8) << "\" y=\"" << fmt("%.2f", y + 4) << "\" text-anchor=\"end\">"
        << fmt("%g", std::abs(v) < 1e-12 * ystep ? 0.0 : v) << "</text>\n";
  }
  out << "<text x=\"" << fmt("%.2f", left + pw / 2) << "\" y=\"" << spec.height - 12 << "\" text-anchor=\"middle\">"
      << escape_xml(spec.x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << fmt("%.2f", top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape_xml(spec.y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    const std::size_t stride = std::max<std::size_t>(1, (s.x.size() + kMaxPointsPerSeries - 1) / kMaxPointsPerSeries);
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i % stride != 0 && i + 1 != s.x.size()) continue;
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!first) out << ' ';
      out << fmt("%.2f", px(s.x[i])) << ',' << fmt("%.2f", py(s.y[i]));
      first = false;
    }
    out << "\"/>\n";

    const double ly = top + 16 + 18.0 * static_cast<double>(k);
    const double lx = left + pw - 190;
    out << "<line x1=\"" << fmt("%.2f", lx) << "\" y1=\"" << fmt("%.2f", ly - 4) << "\" x2=\"" << fmt("%.2f", lx + 24)
        << "\" y2=\"" << fmt("%.2f", ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt("%.2f", lx + 30) << "\" y=\"" << fmt("%.2f", ly) << "\">" << escape_xml(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ddflow
