#pragma once

#include <string>
#include <vector>

namespace pathspace {

struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

// self-contained SVG documents, fixed canvas, no external assets; output is
// deterministic for identical inputs
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<SvgSeries>& series);

// bars with optional +/- 3 error whiskers (errors may be empty)
std::string bar_chart_svg(const std::string& title,
                          const std::vector<std::string>& labels,
                          const std::vector<double>& values,
                          const std::vector<double>& errors = {});

}  // namespace pathspace
