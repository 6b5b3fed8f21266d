#include "era/spiralweb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace era {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

SpiralLayout layout(const RayMatrix& matrix, const LayoutConfig& config) {
  if (matrix.rows().empty())
    throw Error(Errc::parameter, "layout: matrix has no rows");
  if (config.rows_rendered == 0)
    throw Error(Errc::parameter, "layout: rows_rendered must be >= 1");
  if (config.canvas_size == 0)
    throw Error(Errc::parameter, "layout: canvas_size must be > 0");

  const u64 rendered =
      std::min<u64>(config.rows_rendered, matrix.rows().size());
  SpiralLayout out;
  for (u64 mu = 1; mu <= rendered; ++mu) {
    const Ray& row = matrix.rows()[mu - 1];
    const double theta =
        config.angular_offset +
        2.0 * std::numbers::pi * static_cast<double>(mu - 1) /
            static_cast<double>(config.rows_rendered);
    std::vector<std::size_t> strand;
    strand.reserve(row.elements.size());
    for (u64 nu = 0; nu < row.elements.size(); ++nu) {
      const u64 value = row.elements[nu];
      const double radius = config.radius_mode == RadiusMode::log_value
                                ? std::log(static_cast<double>(value))
                                : static_cast<double>(nu);
      strand.push_back(out.points.size());
      out.points.push_back({MatrixCoord{mu, nu}, value,
                            radius * std::cos(theta),
                            radius * std::sin(theta)});
    }
    out.strands.push_back(std::move(strand));
  }

  // Spiral thread: all prime entries (nu >= 1) by ascending value.
  std::vector<std::size_t> thread;
  for (std::size_t i = 0; i < out.points.size(); ++i)
    if (out.points[i].coord.nu >= 1) thread.push_back(i);
  std::sort(thread.begin(), thread.end(), [&](std::size_t a, std::size_t b) {
    return out.points[a].value < out.points[b].value;
  });
  if (!thread.empty()) out.rings.push_back(std::move(thread));
  return out;
}

std::string render_svg(const SpiralLayout& layout, const LayoutConfig& config) {
  const double size = static_cast<double>(config.canvas_size);
  const double margin = size * 0.05;

  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  if (!layout.points.empty()) {
    min_x = max_x = layout.points[0].x;
    min_y = max_y = layout.points[0].y;
    for (const SpiralPoint& p : layout.points) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const double span = std::max(max_x - min_x, max_y - min_y);
  const double scale = span > 0 ? (size - 2 * margin) / span : 1.0;
  const double cx = (min_x + max_x) / 2;
  const double cy = (min_y + max_y) / 2;
  // Center on the canvas; SVG y grows downward.
  const auto sx = [&](double x) { return size / 2 + (x - cx) * scale; };
  const auto sy = [&](double y) { return size / 2 - (y - cy) * scale; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(config.canvas_size) + "\" height=\"" +
         std::to_string(config.canvas_size) + "\" viewBox=\"0 0 " +
         std::to_string(config.canvas_size) + " " +
         std::to_string(config.canvas_size) + "\">\n";

  const auto polyline = [&](const std::vector<std::size_t>& idxs,
                            const char* cls, const char* stroke) {
    if (idxs.size() < 2) return;
    svg += "  <polyline class=\"";
    svg += cls;
    svg += "\" fill=\"none\" stroke=\"";
    svg += stroke;
    svg += "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < idxs.size(); ++i) {
      const SpiralPoint& p = layout.points[idxs[i]];
      if (i) svg += ' ';
      svg += fixed(sx(p.x), 3) + ',' + fixed(sy(p.y), 3);
    }
    svg += "\"/>\n";
  };

  for (const auto& strand : layout.strands) polyline(strand, "strand", "#8a8a8a");
  for (const auto& ring : layout.rings) polyline(ring, "spiral", "#c0392b");

  for (const SpiralPoint& p : layout.points) {
    svg += "  <circle class=\"pt\" cx=\"" + fixed(sx(p.x), 3) + "\" cy=\"" +
           fixed(sy(p.y), 3) + "\" r=\"2.5\" fill=\"#1a1a1a\"/>\n";
    if (config.label_threshold > 0 && p.value <= config.label_threshold)
      svg += "  <text x=\"" + fixed(sx(p.x) + 4, 3) + "\" y=\"" +
             fixed(sy(p.y) - 4, 3) + "\" font-size=\"10\">" +
             std::to_string(p.value) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string export_table(const SpiralLayout& layout) {
  std::string table = "mu,nu,value,x,y\n";
  for (const SpiralPoint& p : layout.points)
    table += std::to_string(p.coord.mu) + ',' + std::to_string(p.coord.nu) +
             ',' + std::to_string(p.value) + ',' + fixed(p.x, 12) + ',' +
             fixed(p.y, 12) + '\n';
  return table;
}

}  // namespace era
