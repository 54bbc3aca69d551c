#include "kgb/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "kgb/csv.hpp"
#include "kgb/error.hpp"

namespace kgb {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round tick positions, about five per axis, at 1, 2 or 5 times a power of ten.
std::vector<double> ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = 10.0 * mag;
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> out;
  for (double k = std::ceil(lo / step); k * step <= hi + 1e-9 * step; k += 1.0) {
    // snap -0 and round-off so labels print cleanly
    const double v = k * step;
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return out;
}

}  // namespace

void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series) {
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) {
    x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
      << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double fx : ticks(x0, x1)) {
    out << "<line x1=\"" << px(fx) << "\" x2=\"" << px(fx) << "\" y1=\"" << kTop + ph << "\" y2=\"" << kTop + ph - 5
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(fx) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << format_number(fx)
        << "</text>\n";
  }
  for (double fy : ticks(y0, y1)) {
    out << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + 5 << "\" y1=\"" << py(fy) << "\" y2=\"" << py(fy)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">" << format_number(fy)
        << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label) << "</text>\n";

  double legend_y = kTop + 16;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.3\"";
    if (s.dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out << format_number(px(s.x[i])) << ',' << format_number(py(s.y[i])) << ' ';
    }
    out << "\"/>\n";
    if (s.markers) {
      for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        out << "<circle cx=\"" << format_number(px(s.x[i])) << "\" cy=\"" << format_number(py(s.y[i]))
            << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
      }
    }
    if (!s.label.empty()) {
      out << "<text x=\"" << kLeft + pw - 8 << "\" y=\"" << legend_y << "\" text-anchor=\"end\" fill=\""
          << s.color << "\">" << escape(s.label) << "</text>\n";
      legend_y += 16;
    }
  }
  out << "</svg>\n";
}

}  // namespace kgb
