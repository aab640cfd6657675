#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kellipse/trace.hpp"

namespace kellipse {

struct SvgStyle {
  double x_lo = -1, x_hi = 1, y_lo = -1, y_hi = 1;  // world window
  std::vector<Point> foci;                          // drawn as markers
  int width_px = 600;
  std::string stroke = "#1f4e9c";
  bool axes = true;
  std::string title;
};

/// SVG 1.1 document in world coordinates (y up), one <path> per polyline,
/// foci as circles. Coordinates are printed round-trippably.
std::string export_svg(const std::vector<Polyline>& polylines, const SvgStyle& style);

/// As export_svg, drawing an (x, y)-projected point cloud as dots.
std::string export_svg_cloud(const std::vector<Point>& points, const SvgStyle& style);

/// Header "x,y" or "x,y,z" from the first point's dimension ("x,y" when
/// empty), one point per LF-terminated row.
std::string export_csv(const std::vector<Point>& points);

/// Inverse of export_csv; ParseError on malformed text.
std::vector<Point> parse_csv(std::string_view text);

/// Writes `text` to `path`; IoError on failure.
void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

/// Shortest decimal form that round-trips a double.
std::string format_double(double value);

}  // namespace kellipse
