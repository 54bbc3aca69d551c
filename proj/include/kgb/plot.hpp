#ifndef KGB_PLOT_HPP
#define KGB_PLOT_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace kgb {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#c0392b";
  bool dashed = false;
  bool markers = false;
};

// Minimal SVG line chart with axes, tick labels and a legend.
void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace kgb

#endif  // KGB_PLOT_HPP
