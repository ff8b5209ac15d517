#pragma once

#include <string>
#include <vector>

namespace percaniso {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Minimal self-contained line plot: axes, ticks, one polyline per series,
// legend. No external plotting dependency.
std::string render_svg_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel, const std::vector<PlotSeries>& series);

}  // namespace percaniso
