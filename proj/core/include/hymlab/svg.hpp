#pragma once

#include <string>
#include <vector>

namespace hymlab {

// One labeled polyline; x and y must have equal size.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Static line plot with framed axes, min/max tick labels, and a legend.
// Output text is fully deterministic for identical inputs.
std::string svg_line_plot(const std::string& title,
                          const std::vector<SvgSeries>& series, int width = 720,
                          int height = 440);

}  // namespace hymlab
