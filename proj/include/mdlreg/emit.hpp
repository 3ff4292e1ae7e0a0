#pragma once

#include <string>
#include <vector>

// Output plumbing: shortest round-trip decimal formatting (bit-exact CSV
// reproducibility), atomic file writes, and a minimal single-panel SVG
// line chart.

namespace mdlreg {

// Shortest decimal string that round-trips to the same double.
std::string fmt_double(double v);

// Write via a temporary file in the same directory, then rename, so a
// partial file is never left behind.
void write_atomic(const std::string& path, const std::string& content);

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel,
                           const std::vector<SvgSeries>& series);

}  // namespace mdlreg
