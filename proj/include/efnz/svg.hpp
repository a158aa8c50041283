#ifndef EFNZ_SVG_HPP
#define EFNZ_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace efnz {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgHistogram {
    std::string label;
    std::vector<double> bin_edges;
    std::vector<double> counts;
};

/// Minimal native SVG line chart (one polyline per series, axes, ticks,
/// legend). Plots are derived views; they never feed back into CSV data.
void render_line_chart(const std::filesystem::path& path, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       const std::vector<SvgSeries>& series);

/// Bar histogram panels, one per histogram, stacked vertically.
void render_histograms(const std::filesystem::path& path, const std::string& title,
                       const std::string& x_label,
                       const std::vector<SvgHistogram>& histograms);

}  // namespace efnz

#endif  // EFNZ_SVG_HPP
