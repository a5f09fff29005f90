#pragma once

#include <optional>
#include <string>
#include <vector>

namespace swts {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    /// Optional +/- band drawn as a translucent polygon (same length as y).
    std::optional<std::vector<double>> band;
    bool markers = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 720;
    int height = 440;
};

/// Self-contained SVG line plot with axes, ticks, legend and error bands.
/// Output depends only on the inputs (fixed number formatting, no timestamps).
std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series);

}  // namespace swts
