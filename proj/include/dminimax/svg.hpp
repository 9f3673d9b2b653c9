#pragma once

#include <string>
#include <vector>

namespace dminimax {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static line chart.  Output is a pure function of the inputs (no
/// timestamps, no generated ids), so identical data gives identical bytes.
/// With log_y, nonpositive values are dropped from the drawn path.
std::string svg_line_chart(const std::string& title,
                           const std::vector<SvgSeries>& series, bool log_y);

}  // namespace dminimax
