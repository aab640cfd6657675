#include "kellipse/export.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace kellipse {

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

namespace {

void svg_open(std::ostringstream& out, const SvgStyle& style) {
  const double w = style.x_hi - style.x_lo;
  const double h = style.y_hi - style.y_lo;
  const int height_px = static_cast<int>(style.width_px * h / w + 0.5);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.width_px << "\" height=\""
      << height_px << "\" viewBox=\"" << format_double(style.x_lo) << ' ' << format_double(-style.y_hi) << ' '
      << format_double(w) << ' ' << format_double(h) << "\">\n";
  if (!style.title.empty()) out << "<title>" << style.title << "</title>\n";
  out << "<g transform=\"scale(1,-1)\">\n";
  if (style.axes) {
    const double stroke = w / 600.0;
    out << "<line class=\"axis\" x1=\"" << format_double(style.x_lo) << "\" y1=\"0\" x2=\""
        << format_double(style.x_hi) << "\" y2=\"0\" stroke=\"#999\" stroke-width=\"" << format_double(stroke)
        << "\"/>\n";
    out << "<line class=\"axis\" x1=\"0\" y1=\"" << format_double(style.y_lo) << "\" x2=\"0\" y2=\""
        << format_double(style.y_hi) << "\" stroke=\"#999\" stroke-width=\"" << format_double(stroke) << "\"/>\n";
  }
}

void svg_close(std::ostringstream& out, const SvgStyle& style) {
  const double radius = (style.x_hi - style.x_lo) / 120.0;
  for (const auto& f : style.foci) {
    out << "<circle class=\"focus\" cx=\"" << format_double(f[0]) << "\" cy=\""
        << format_double(f.dimension() > 1 ? f[1] : 0.0) << "\" r=\"" << format_double(radius)
        << "\" fill=\"#c0392b\"/>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace

std::string export_svg(const std::vector<Polyline>& polylines, const SvgStyle& style) {
  std::ostringstream out;
  svg_open(out, style);
  const double stroke = (style.x_hi - style.x_lo) / 300.0;
  for (const auto& line : polylines) {
    out << "<path class=\"kellipse\" fill=\"none\" stroke=\"" << style.stroke << "\" stroke-width=\""
        << format_double(stroke) << "\" d=\"";
    for (std::size_t i = 0; i < line.vertices.size(); ++i) {
      const auto& v = line.vertices[i];
      out << (i ? " L " : "M ") << format_double(v[0]) << ' ' << format_double(v[1]);
    }
    if (line.closed) out << " Z";
    out << "\"/>\n";
  }
  svg_close(out, style);
  return out.str();
}

std::string export_svg_cloud(const std::vector<Point>& points, const SvgStyle& style) {
  std::ostringstream out;
  svg_open(out, style);
  const double radius = (style.x_hi - style.x_lo) / 800.0;
  for (const auto& p : points) {
    out << "<circle class=\"sample\" cx=\"" << format_double(p[0]) << "\" cy=\"" << format_double(p[1])
        << "\" r=\"" << format_double(radius) << "\" fill=\"" << style.stroke << "\"/>\n";
  }
  svg_close(out, style);
  return out.str();
}

std::string export_csv(const std::vector<Point>& points) {
  static const char* const kAxes[] = {"x", "y", "z"};
  const std::size_t dim = points.empty() ? 2 : points.front().dimension();
  std::string out;
  for (std::size_t i = 0; i < dim; ++i) {
    out += i ? "," : "";
    out += i < 3 ? kAxes[i] : "x" + std::to_string(i);
  }
  out += '\n';
  for (const auto& p : points) {
    require_same_dimension(p.dimension(), dim);
    for (std::size_t i = 0; i < dim; ++i) {
      out += i ? "," : "";
      out += format_double(p[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<Point> parse_csv(std::string_view text) {
  std::vector<Point> points;
  std::size_t line_start = 0;
  std::size_t line_number = 0;
  std::size_t columns = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    line_start = line_end + 1;
    if (line.empty()) continue;
    ++line_number;
    if (line_number == 1) {
      columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
      continue;
    }
    std::vector<double> coords;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string_view::npos) comma = line.size();
      const std::string_view field = line.substr(pos, comma - pos);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError("CSV row " + std::to_string(line_number) + ": bad number '" + std::string(field) + "'");
      }
      coords.push_back(value);
      pos = comma + 1;
    }
    if (coords.size() != columns) {
      throw ParseError("CSV row " + std::to_string(line_number) + " has " + std::to_string(coords.size()) +
                       " fields, header has " + std::to_string(columns));
    }
    points.emplace_back(std::move(coords));
  }
  return points;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace kellipse
