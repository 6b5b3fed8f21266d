#pragma once

#include <string>
#include <vector>

#include "era/rays.hpp"

namespace era {

enum class RadiusMode {
  log_value,     // radius = ln(value); the only mode where deep rays fit
  column_index,  // radius = nu
};

struct LayoutConfig {
  RadiusMode radius_mode = RadiusMode::log_value;
  u64 rows_rendered = 4;
  double angular_offset = 0.0;  // radians
  u64 canvas_size = 800;        // pixels, square
  u64 label_threshold = 0;      // label values <= this; 0 disables labels
};

struct SpiralPoint {
  MatrixCoord coord;
  u64 value = 0;
  double x = 0.0;
  double y = 0.0;
};

/// Plane layout of a matrix corner. Row mu is drawn along the fixed angle
/// angular_offset + 2*pi*(mu-1)/rows_rendered; each element sits at the
/// configured radius. "Web" strands are the per-row polylines; the
/// "spiral" thread visits all prime entries in ascending value order.
/// This construction is this library's own documented convention.
struct SpiralLayout {
  std::vector<SpiralPoint> points;                 // row-major, stable order
  std::vector<std::vector<std::size_t>> strands;   // one per rendered row
  std::vector<std::vector<std::size_t>> rings;     // ascending-prime thread
};

/// Deterministic: identical (matrix, config) give identical layouts.
/// Empty matrix, rows_rendered = 0 or canvas_size = 0 are parameter errors.
SpiralLayout layout(const RayMatrix& matrix, const LayoutConfig& config);

/// Standalone SVG: one polyline per strand with >= 2 points, one polyline
/// for the spiral thread, one marker per point, optional labels.
/// Byte-identical for identical inputs.
std::string render_svg(const SpiralLayout& layout, const LayoutConfig& config);

/// Delimited text, header "mu,nu,value,x,y", one row per point;
/// coordinates printed with 12 digits after the decimal point.
std::string export_table(const SpiralLayout& layout);

}  // namespace era
