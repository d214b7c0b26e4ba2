#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ehp/integrator.hpp"
#include "ehp/rkf45.hpp"

namespace ehp::io {

// Shortest representation that round-trips a double (17 significant digits).
std::string format_double(double x);

// One CSV record. J is absent for reference-integrator output.
struct CsvRow {
  double t;
  double u;
  double v;
  std::optional<double> J;
};

std::vector<CsvRow> csv_rows(const Trajectory& trajectory, double mass);
std::vector<CsvRow> csv_rows(std::span<const rkf45::Sample> samples);

// Header "t,u,v,J", one record per line, LF endings. Writing the parse of a
// file reproduces it byte for byte.
std::string to_csv(std::span<const CsvRow> rows);
std::vector<CsvRow> parse_csv(std::string_view text);

void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Minimal plot renderer: fixed 800x600 canvas, one panel per entry laid out
// horizontally, one polyline per series, auto-scaled axes.
struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

std::string render_svg(std::span<const Panel> panels);

}  // namespace ehp::io
