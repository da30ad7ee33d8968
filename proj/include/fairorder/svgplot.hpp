#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fairorder {

/// Minimal line-chart SVG writer for sweep results. CSV remains the
/// canonical artifact; these charts are quick-look companions.
struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // sorted by x
};

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, bool log_x,
                           const std::vector<PlotSeries>& series);

}  // namespace fairorder
