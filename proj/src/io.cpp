#include "ehp/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ehp::io {

namespace {

constexpr const char* kCsvHeader = "t,u,v,J";

void append_row(std::string& out, const CsvRow& row) {
  out += format_double(row.t);
  out += ',';
  out += format_double(row.u);
  out += ',';
  out += format_double(row.v);
  out += ',';
  if (row.J) out += format_double(*row.J);
  out += '\n';
}

double parse_field(std::string_view field, std::size_t line_no) {
  const std::string tmp(field);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size() || tmp.empty()) {
    throw InvalidArgument("malformed CSV number on line " +
                          std::to_string(line_no));
  }
  return v;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

constexpr const char* kPalette[] = {"#12507b", "#c23b22", "#2e7d32",
                                    "#e65100", "#6a1b9a", "#00838f"};

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<CsvRow> csv_rows(const Trajectory& trajectory, double mass) {
  std::vector<CsvRow> rows;
  rows.reserve(trajectory.states.size());
  for (const State& s : trajectory.states) {
    rows.push_back({s.t, s.u, s.p / mass, s.J});
  }
  return rows;
}

std::vector<CsvRow> csv_rows(std::span<const rkf45::Sample> samples) {
  std::vector<CsvRow> rows;
  rows.reserve(samples.size());
  for (const rkf45::Sample& s : samples) {
    rows.push_back({s.t, s.u, s.v, std::nullopt});
  }
  return rows;
}

std::string to_csv(std::span<const CsvRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const CsvRow& row : rows) append_row(out, row);
  return out;
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!saw_header) {
      if (line != kCsvHeader) {
        throw InvalidArgument("CSV header must be \"t,u,v,J\"");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;

    std::array<std::string_view, 4> fields;
    std::size_t start = 0;
    int n = 0;
    for (int i = 0; i < 3; ++i) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        throw InvalidArgument("CSV row needs 4 fields on line " +
                              std::to_string(line_no));
      }
      fields[n++] = line.substr(start, comma - start);
      start = comma + 1;
    }
    fields[n] = line.substr(start);
    if (fields[n].find(',') != std::string_view::npos) {
      throw InvalidArgument("CSV row has too many fields on line " +
                            std::to_string(line_no));
    }

    CsvRow row{};
    row.t = parse_field(fields[0], line_no);
    row.u = parse_field(fields[1], line_no);
    row.v = parse_field(fields[2], line_no);
    if (!fields[3].empty()) row.J = parse_field(fields[3], line_no);
    rows.push_back(row);
  }
  if (!saw_header) throw InvalidArgument("CSV input is empty");
  return rows;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InvalidArgument("short write to " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string render_svg(std::span<const Panel> panels) {
  constexpr int kWidth = 800;
  constexpr int kHeight = 600;
  constexpr int kMarginLeft = 62;
  constexpr int kMarginRight = 16;
  constexpr int kMarginTop = 46;
  constexpr int kMarginBottom = 52;
  constexpr std::size_t kMaxPointsPerSeries = 4096;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  const std::size_t n_panels = panels.empty() ? 1 : panels.size();
  const int panel_w = kWidth / static_cast<int>(n_panels);

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const Panel& panel = panels[pi];
    const int x0 = static_cast<int>(pi) * panel_w + kMarginLeft;
    const int x1 = static_cast<int>(pi + 1) * panel_w - kMarginRight;
    const int y0 = kMarginTop;
    const int y1 = kHeight - kMarginBottom;

    double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
    bool have = false;
    for (const Series& s : panel.series) {
      for (const auto& [px, py] : s.points) {
        if (!std::isfinite(px) || !std::isfinite(py)) continue;
        if (!have) {
          min_x = max_x = px;
          min_y = max_y = py;
          have = true;
        } else {
          min_x = std::min(min_x, px);
          max_x = std::max(max_x, px);
          min_y = std::min(min_y, py);
          max_y = std::max(max_y, py);
        }
      }
    }
    if (!have) {
      min_x = min_y = -1.0;
      max_x = max_y = 1.0;
    }
    if (max_x == min_x) {
      max_x += 0.5;
      min_x -= 0.5;
    }
    if (max_y == min_y) {
      max_y += 0.5;
      min_y -= 0.5;
    }

    const auto sx = [&](double v) {
      return x0 + (v - min_x) / (max_x - min_x) * (x1 - x0);
    };
    const auto sy = [&](double v) {
      return y1 - (v - min_y) / (max_y - min_y) * (y1 - y0);
    };

    svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0
        << "\" height=\"" << y1 - y0
        << "\" fill=\"none\" stroke=\"#444444\"/>\n";
    svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << y0 - 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">"
        << xml_escape(panel.title) << "</text>\n";
    svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << y1 + 36
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << xml_escape(panel.x_label) << "</text>\n";
    svg << "<text x=\"" << x0 - 46 << "\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 " << x0 - 46 << " "
        << (y0 + y1) / 2 << ")\">" << xml_escape(panel.y_label) << "</text>\n";

    for (int tick = 0; tick <= 4; ++tick) {
      const double fx = min_x + (max_x - min_x) * tick / 4.0;
      const double fy = min_y + (max_y - min_y) * tick / 4.0;
      const double px = sx(fx);
      const double py = sy(fy);
      svg << "<line x1=\"" << px << "\" y1=\"" << y1 << "\" x2=\"" << px
          << "\" y2=\"" << y1 + 4 << "\" stroke=\"#444444\"/>\n"
          << "<text x=\"" << px << "\" y=\"" << y1 + 18
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"10\">"
          << short_num(fx) << "</text>\n";
      svg << "<line x1=\"" << x0 - 4 << "\" y1=\"" << py << "\" x2=\"" << x0
          << "\" y2=\"" << py << "\" stroke=\"#444444\"/>\n"
          << "<text x=\"" << x0 - 7 << "\" y=\"" << py + 3
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
             "font-size=\"10\">"
          << short_num(fy) << "</text>\n";
    }

    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const Series& s = panel.series[si];
      const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
      const std::size_t stride =
          std::max<std::size_t>(1, s.points.size() / kMaxPointsPerSeries);
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1\" points=\"";
      const auto emit_point = [&](std::size_t i) {
        const auto& [px, py] = s.points[i];
        if (!std::isfinite(px) || !std::isfinite(py)) return;
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(px), sy(py));
        svg << buf;
      };
      std::size_t last = 0;
      for (std::size_t i = 0; i < s.points.size(); i += stride) {
        emit_point(i);
        last = i;
      }
      if (!s.points.empty() && last != s.points.size() - 1) {
        emit_point(s.points.size() - 1);
      }
      svg << "\"/>\n";
      svg << "<text x=\"" << x0 + 8 << "\" y=\"" << y0 + 14 + 13 * si
          << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color
          << "\">" << xml_escape(s.label) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ehp::io
