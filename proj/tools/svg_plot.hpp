#pragma once

// Minimal line plots for quick looks at simulation output. Not a test surface.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace spm::tools {

struct Series {
  std::string label;
  std::vector<double> y;
  const char* color;
};

inline void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& y_label,
                           const std::vector<double>& x, const std::vector<Series>& series) {
  constexpr double W = 720, H = 420, left = 70, right = 20, top = 40, bottom = 50;
  double xmin = x.front(), xmax = x.back();
  double ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * (W - left - right); };
  auto py = [&](double v) { return H - bottom - (v - ymin) / (ymax - ymin) * (H - top - bottom); };

  std::ofstream out(path);
  char buf[256];
  std::snprintf(buf, sizeof buf, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", W, H);
  out << buf << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" fill=\"none\" stroke=\"black\"/>\n",
                left, top, W - left - right, H - top - bottom);
  out << buf;
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">" << title
      << "</text>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">time [s]</text>\n";
  out << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << y_label << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"10\">%.4g</text>\n"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"10\">%.4g</text>\n",
                  left - 4, py(yv) + 3, yv, px(xv), H - bottom + 14, xv);
    out << buf;
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    out << "<polyline fill=\"none\" stroke=\"" << series[s].color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < x.size() && k < series[s].y.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x[k]), py(series[s].y[k]));
      out << buf;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%.0f\" y=\"%.0f\" font-size=\"11\" fill=\"%s\">%s</text>\n",
                  W - right - 150, top + 16 + 14.0 * s, series[s].color, series[s].label.c_str());
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace spm::tools
