#include "ectmol/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace ectmol {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string ecc_svg(const ThresholdGrid& grid, std::span<const std::int32_t> ecc) {
  const double width = 640.0, height = 400.0, margin = 48.0;
  const double plot_w = width - 2 * margin, plot_h = height - 2 * margin;

  double t_min = grid.values.front();
  double t_max = grid.values.back();
  if (t_max == t_min) t_max = t_min + 1.0;
  std::int32_t c_min = 0, c_max = 1;
  for (std::int32_t v : ecc) {
    c_min = std::min(c_min, v);
    c_max = std::max(c_max, v);
  }

  auto sx = [&](double t) { return margin + (t - t_min) / (t_max - t_min) * plot_w; };
  auto sy = [&](double c) {
    return height - margin - (c - c_min) / static_cast<double>(c_max - c_min) * plot_h;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\">\n";
  out += "<line x1=\"" + num(margin) + "\" y1=\"" + num(height - margin) + "\" x2=\"" +
         num(width - margin) + "\" y2=\"" + num(height - margin) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + num(margin) + "\" y1=\"" + num(margin) + "\" x2=\"" + num(margin) +
         "\" y2=\"" + num(height - margin) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // piecewise-constant curve: horizontal at each sample, vertical jumps
  std::string path = "M " + num(sx(grid.values[0])) + " " + num(sy(ecc[0]));
  for (std::size_t i = 1; i < grid.values.size(); ++i) {
    path += " H " + num(sx(grid.values[i]));
    path += " V " + num(sy(ecc[i]));
  }
  out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"#1f6feb\" stroke-width=\"2\"/>\n";

  out += "<text x=\"" + num(margin) + "\" y=\"" + num(height - margin + 20) +
         "\" font-size=\"12\">" + num(t_min) + "</text>\n";
  out += "<text x=\"" + num(width - margin - 24) + "\" y=\"" + num(height - margin + 20) +
         "\" font-size=\"12\">" + num(t_max) + "</text>\n";
  out += "<text x=\"" + num(margin - 36) + "\" y=\"" + num(height - margin) +
         "\" font-size=\"12\">" + std::to_string(c_min) + "</text>\n";
  out += "<text x=\"" + num(margin - 36) + "\" y=\"" + num(margin + 10) + "\" font-size=\"12\">" +
         std::to_string(c_max) + "</text>\n";
  out += "</svg>\n";
  return out;
}

std::string ect_heatmap_svg(const ECTDescriptor& descriptor) {
  const std::size_t d_count = descriptor.directions;
  const std::size_t t_count = descriptor.thresholds;
  const double cell = 18.0, margin = 24.0;
  const double width = margin * 2 + cell * static_cast<double>(d_count);
  const double height = margin * 2 + cell * static_cast<double>(t_count);

  std::int32_t lo = descriptor.values.empty() ? 0 : descriptor.values[0];
  std::int32_t hi = lo;
  for (std::int32_t v : descriptor.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\">\n";
  for (std::size_t d = 0; d < d_count; ++d) {
    for (std::size_t t = 0; t < t_count; ++t) {
      int gray = 128;
      if (hi > lo) {
        gray = static_cast<int>(
            255.0 * static_cast<double>(descriptor.at(d, t) - lo) / static_cast<double>(hi - lo) +
            0.5);
      }
      char color[8];
      std::snprintf(color, sizeof(color), "#%02x%02x%02x", gray, gray, gray);
      out += "<rect x=\"" + num(margin + cell * static_cast<double>(d)) + "\" y=\"" +
             num(margin + cell * static_cast<double>(t)) + "\" width=\"" + num(cell) +
             "\" height=\"" + num(cell) + "\" fill=\"" + color + "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace ectmol
