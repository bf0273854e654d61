// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace xnits {

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // non-positive values are skipped
};

struct PlotSpec {
  std::string title;
  std::string x_label;  // include the unit, e.g. "h [length]"
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Log-log line plot as standalone SVG: decade grid, one polyline per series,
/// legend. Output depends only on the input.
void write_loglog_svg(std::ostream& out, const PlotSpec& spec);

}  // namespace xnits
