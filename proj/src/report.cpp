#include "vowelspace/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vowelspace/error.hpp"

namespace vowelspace {

namespace {

constexpr double kPlotWidth = 640.0;
constexpr double kPlotHeight = 560.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 150.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  return out;
}

void write_params(std::ostream& out, const ParamBlock& params) {
  for (const auto& [k, v] : params) out << "# " << k << " = " << v << "\n";
}

// Reads the leading `#` parameter lines, checks the header and hands each
// data line (split) to `on_row`.
template <typename OnRow>
ParamBlock read_csv(const std::filesystem::path& path, const char* header, std::size_t arity, OnRow on_row) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, path.string());
  ParamBlock params;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (!line.empty() && line.front() == '#') {
        std::string_view body(line);
        body.remove_prefix(1);
        const auto eq = body.find('=');
        auto trim = [](std::string_view s) {
          while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
          while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
          return std::string(s);
        };
        if (eq != std::string_view::npos) params.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
        continue;
      }
      if (line != header) {
        throw Error(ErrorKind::SchemaMismatch, path.string() + ":" + std::to_string(line_no) +
                                                   ": expected header '" + header + "'");
      }
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != arity) {
      throw Error(ErrorKind::SchemaMismatch, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                                 std::to_string(arity) + " fields, got " +
                                                 std::to_string(fields.size()));
    }
    try {
      on_row(fields);
    } catch (const Error& e) {
      throw Error(ErrorKind::SchemaMismatch, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw Error(ErrorKind::SchemaMismatch, path.string() + ": missing header");
  return params;
}

double parse_double(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::InvalidArgument, std::string("unparseable ") + what + " '" + s + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& s, const char* what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorKind::InvalidArgument, std::string("unparseable ") + what + " '" + s + "'");
  }
  return static_cast<std::size_t>(std::stoull(s));
}

nlohmann::json json_number(double v) { return round_sig6(v); }

AxisRange auto_range(std::vector<double> values) {
  AxisRange r{-2.0, 2.0};
  for (double v : values) {
    r.min = std::min(r.min, std::floor(v - 0.25));
    r.max = std::max(r.max, std::ceil(v + 0.25));
  }
  return r;
}

void marker(std::ostream& svg, std::size_t shape, double x, double y, const char* color) {
  const double s = 5.0;
  switch (shape % 4) {
    case 0:
      svg << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\"" << px(s) << "\" fill=\"" << color
          << "\"/>";
      break;
    case 1:
      svg << "<rect x=\"" << px(x - s) << "\" y=\"" << px(y - s) << "\" width=\"" << px(2 * s) << "\" height=\""
          << px(2 * s) << "\" fill=\"" << color << "\"/>";
      break;
    case 2:
      svg << "<polygon points=\"" << px(x) << "," << px(y - s - 1) << " " << px(x - s) << "," << px(y + s) << " "
          << px(x + s) << "," << px(y + s) << "\" fill=\"" << color << "\"/>";
      break;
    default:
      svg << "<polygon points=\"" << px(x) << "," << px(y - s - 1) << " " << px(x + s + 1) << "," << px(y) << " "
          << px(x) << "," << px(y + s + 1) << " " << px(x - s - 1) << "," << px(y) << "\" fill=\"" << color
          << "\"/>";
      break;
  }
}

}  // namespace

std::string format_sig6(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  return fmt("%.6g", value);
}

double round_sig6(double value) { return std::stod(format_sig6(value)); }

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

void write_table(const std::filesystem::path& path, const Table<FormantRecord>& table) {
  auto out = open_out(path);
  write_params(out, table.params);
  out << kFormantHeader << "\n";
  for (const auto& r : table.rows) {
    out << csv_field(r.system) << ',' << csv_field(r.speaker) << ',' << csv_field(r.src_lang) << ','
        << csv_field(r.tgt_lang) << ',' << csv_field(r.vowel) << ',' << csv_field(r.role) << ',' << r.idx << ','
        << format_sig6(r.f1_hz) << ',' << format_sig6(r.f2_hz) << "\n";
  }
}

void write_table(const std::filesystem::path& path, const Table<NormalizedRecord>& table) {
  auto out = open_out(path);
  write_params(out, table.params);
  out << kNormalizedHeader << "\n";
  for (const auto& r : table.rows) {
    out << csv_field(r.system) << ',' << csv_field(r.speaker) << ',' << csv_field(r.src_lang) << ','
        << csv_field(r.tgt_lang) << ',' << csv_field(r.vowel) << ',' << csv_field(r.role) << ',' << r.idx << ','
        << format_sig6(r.z1) << ',' << format_sig6(r.z2) << "\n";
  }
}

void write_table(const std::filesystem::path& path, const std::vector<MetricRow>& rows) {
  auto out = open_out(path);
  out << kMetricHeader << "\n";
  for (const auto& r : rows) {
    out << csv_field(r.system_id) << ',' << r.source_language.str() << ',' << r.target_language.str() << ','
        << csv_field(r.vowel) << ',' << (r.shared ? "true" : "false") << ',' << format_sig6(r.distance) << ','
        << format_sig6(r.compactness_sd) << ',' << r.n_points << "\n";
  }
}

Table<FormantRecord> read_formant_table(const std::filesystem::path& path) {
  Table<FormantRecord> table;
  table.params = read_csv(path, kFormantHeader, 9, [&](std::vector<std::string>& f) {
    table.rows.push_back({f[0], f[1], f[2], f[3], f[4], f[5], parse_count(f[6], "idx"),
                          parse_double(f[7], "f1_hz"), parse_double(f[8], "f2_hz")});
  });
  return table;
}

Table<NormalizedRecord> read_normalized_table(const std::filesystem::path& path) {
  Table<NormalizedRecord> table;
  table.params = read_csv(path, kNormalizedHeader, 9, [&](std::vector<std::string>& f) {
    table.rows.push_back({f[0], f[1], f[2], f[3], f[4], f[5], parse_count(f[6], "idx"),
                          parse_double(f[7], "z1"), parse_double(f[8], "z2")});
  });
  return table;
}

std::vector<MetricRow> read_metric_table(const std::filesystem::path& path) {
  std::vector<MetricRow> rows;
  read_csv(path, kMetricHeader, 8, [&](std::vector<std::string>& f) {
    if (f[4] != "true" && f[4] != "false") {
      throw Error(ErrorKind::InvalidArgument, "shared must be true or false, got '" + f[4] + "'");
    }
    MetricRow row;
    row.system_id = f[0];
    row.source_language = LanguageCode(f[1]);
    row.target_language = LanguageCode(f[2]);
    row.vowel = f[3];
    row.shared = f[4] == "true";
    row.distance = parse_double(f[5], "distance");
    row.compactness_sd = parse_double(f[6], "compactness");
    row.n_points = parse_count(f[7], "n");
    rows.push_back(std::move(row));
  });
  return rows;
}

ParamBlock to_param_block(const nlohmann::json& params) {
  ParamBlock block;
  for (const auto& [key, value] : params.items()) {
    block.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
  }
  return block;
}

nlohmann::json summary_json(const std::map<std::string, SystemSummary>& summary, SummaryWeighting weighting,
                            const nlohmann::json& params) {
  auto cell = [](const std::optional<SummaryCell>& c) -> nlohmann::json {
    if (!c) return nullptr;
    return {{"distance", json_number(c->mean_distance)}, {"sd", json_number(c->mean_compactness)}};
  };
  nlohmann::json systems = nlohmann::json::object();
  for (const auto& [system, s] : summary) {
    systems[system] = {{"shared", cell(s.shared)}, {"non-shared", cell(s.non_shared)}};
  }
  return {{"parameters", params},
          {"weighting", weighting == SummaryWeighting::PerToken ? "per-token" : "per-vowel"},
          {"systems", systems}};
}

nlohmann::json pair_matrix_json(const std::map<std::string, PairMatrix>& matrices, VowelFilter filter,
                                const nlohmann::json& params) {
  nlohmann::json systems = nlohmann::json::object();
  for (const auto& [system, m] : matrices) {
    nlohmann::json languages = nlohmann::json::array();
    for (const auto& l : m.languages) languages.push_back(l.str());
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& row : m.cells) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& c : row) r.push_back(c ? json_number(*c) : nlohmann::json(nullptr));
      grid.push_back(std::move(r));
    }
    systems[system] = {{"languages", languages}, {"distance", grid}};
  }
  return {{"parameters", params},
          {"layout", {{"rows", "source"}, {"columns", "target"}}},
          {"vowels", std::string(to_string(filter))},
          {"systems", systems}};
}

std::map<std::string, PairMatrix> pair_matrices_from_json(const nlohmann::json& doc) {
  std::map<std::string, PairMatrix> out;
  try {
    for (const auto& [system, body] : doc.at("systems").items()) {
      PairMatrix m;
      for (const auto& l : body.at("languages")) m.languages.emplace_back(l.get<std::string>());
      for (const auto& row : body.at("distance")) {
        std::vector<std::optional<double>> cells;
        for (const auto& c : row) {
          cells.push_back(c.is_null() ? std::nullopt : std::optional<double>(c.get<double>()));
        }
        if (cells.size() != m.languages.size()) throw Error(ErrorKind::SchemaMismatch, "ragged matrix row");
        m.cells.push_back(std::move(cells));
      }
      if (m.cells.size() != m.languages.size()) throw Error(ErrorKind::SchemaMismatch, "matrix is not square");
      out.emplace(system, std::move(m));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("pair matrix json: ") + e.what());
  }
  return out;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, path.string() + ": " + e.what());
  }
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::vector<PixelPoint>> plot_coordinates(const VowelSpacePlot& plot) {
  std::vector<double> z1s;
  std::vector<double> z2s;
  for (const auto& s : plot.series) {
    for (const auto& p : s.points) {
      z1s.push_back(p.point.z1);
      z2s.push_back(p.point.z2);
    }
  }
  const AxisRange r1 = plot.z1_range.value_or(auto_range(z1s));
  const AxisRange r2 = plot.z2_range.value_or(auto_range(z2s));
  const double w = kPlotWidth - kMarginLeft - kMarginRight;
  const double h = kPlotHeight - kMarginTop - kMarginBottom;
  std::vector<std::vector<PixelPoint>> out;
  for (const auto& s : plot.series) {
    std::vector<PixelPoint> pts;
    for (const auto& p : s.points) {
      pts.push_back({kMarginLeft + (r2.max - p.point.z2) / (r2.max - r2.min) * w,
                     kMarginTop + (p.point.z1 - r1.min) / (r1.max - r1.min) * h});
    }
    out.push_back(std::move(pts));
  }
  return out;
}

std::string vowel_space_svg(const VowelSpacePlot& plot) {
  std::size_t total = 0;
  for (const auto& s : plot.series) total += s.points.size();
  if (total == 0) throw Error(ErrorKind::EmptyPlot, "vowel space plot has no points");

  std::vector<double> z1s;
  std::vector<double> z2s;
  for (const auto& s : plot.series) {
    for (const auto& p : s.points) {
      z1s.push_back(p.point.z1);
      z2s.push_back(p.point.z2);
    }
  }
  const AxisRange r1 = plot.z1_range.value_or(auto_range(z1s));
  const AxisRange r2 = plot.z2_range.value_or(auto_range(z2s));
  const double left = kMarginLeft;
  const double top = kMarginTop;
  const double right = kPlotWidth - kMarginRight;
  const double bottom = kPlotHeight - kMarginBottom;
  const auto coords = plot_coordinates(plot);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPlotWidth << "\" height=\"" << kPlotHeight
      << "\" viewBox=\"0 0 " << kPlotWidth << " " << kPlotHeight << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text class=\"title\" x=\"" << px((left + right) / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
      << xml_escape(plot.title) << "</text>\n"
      << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(right - left) << "\" height=\""
      << px(bottom - top) << "\" fill=\"none\" stroke=\"#333\"/>\n";

  // Integer ticks; z2 decreases to the right, z1 increases downwards.
  svg << "<g class=\"ticks\" font-size=\"11\" fill=\"#333\">\n";
  for (double v = std::ceil(r2.min); v <= r2.max; v += 1.0) {
    const double x = left + (r2.max - v) / (r2.max - r2.min) * (right - left);
    svg << "<line x1=\"" << px(x) << "\" y1=\"" << px(bottom) << "\" x2=\"" << px(x) << "\" y2=\"" << px(top)
        << "\" stroke=\"#ddd\"/><text x=\"" << px(x) << "\" y=\"" << px(bottom + 16)
        << "\" text-anchor=\"middle\">" << fmt("%g", v) << "</text>\n";
  }
  for (double v = std::ceil(r1.min); v <= r1.max; v += 1.0) {
    const double y = top + (v - r1.min) / (r1.max - r1.min) * (bottom - top);
    svg << "<line x1=\"" << px(left) << "\" y1=\"" << px(y) << "\" x2=\"" << px(right) << "\" y2=\"" << px(y)
        << "\" stroke=\"#ddd\"/><text x=\"" << px(left - 8) << "\" y=\"" << px(y + 4)
        << "\" text-anchor=\"end\">" << fmt("%g", v) << "</text>\n";
  }
  svg << "</g>\n"
      << "<text class=\"axis-label\" x=\"" << px((left + right) / 2) << "\" y=\"" << px(bottom + 40)
      << "\" text-anchor=\"middle\" font-size=\"13\">normalized F2 (z2, reversed)</text>\n"
      << "<text class=\"axis-label\" x=\"18\" y=\"" << px((top + bottom) / 2)
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " << px((top + bottom) / 2)
      << ")\">normalized F1 (z1, reversed)</text>\n";

  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const auto& series = plot.series[s];
    const char* color = kPalette[s % std::size(kPalette)];
    svg << "<g class=\"series\" data-series=\"" << xml_escape(series.name) << "\">\n";
    for (std::size_t i = 0; i < series.points.size(); ++i) {
      const auto& p = coords[s][i];
      svg << "<g class=\"point\" data-label=\"" << xml_escape(series.points[i].label) << "\" data-z1=\""
          << format_sig6(series.points[i].point.z1) << "\" data-z2=\"" << format_sig6(series.points[i].point.z2)
          << "\" data-x=\"" << px(p.x) << "\" data-y=\"" << px(p.y) << "\">";
      marker(svg, s, p.x, p.y, color);
      svg << "<text x=\"" << px(p.x + 7) << "\" y=\"" << px(p.y - 7) << "\" font-size=\"14\" fill=\"" << color
          << "\">" << xml_escape(series.points[i].label) << "</text></g>\n";
    }
    svg << "</g>\n";
  }

  if (plot.series.size() > 1) {
    svg << "<g class=\"legend\" font-size=\"12\">\n";
    for (std::size_t s = 0; s < plot.series.size(); ++s) {
      const double y = top + 12 + 20.0 * static_cast<double>(s);
      const char* color = kPalette[s % std::size(kPalette)];
      marker(svg, s, right + 20, y, color);
      svg << "<text x=\"" << px(right + 32) << "\" y=\"" << px(y + 4) << "\">" << xml_escape(plot.series[s].name)
          << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void render_vowel_space(const VowelSpacePlot& plot, const std::filesystem::path& path) {
  const auto text = vowel_space_svg(plot);
  auto out = open_out(path);
  out << text;
}

Rgb heat_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  constexpr Rgb light{247, 251, 255};
  constexpr Rgb dark{8, 48, 107};
  auto mix = [t](double a, double b) { return a + (b - a) * t; };
  return {mix(light.r, dark.r), mix(light.g, dark.g), mix(light.b, dark.b)};
}

std::string css_color(const Rgb& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "rgb(%.3f%%,%.3f%%,%.3f%%)", c.r / 2.55, c.g / 2.55, c.b / 2.55);
  return buf;
}

Rgb parse_css_color(std::string_view text) {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  const std::string s(text);
  if (std::sscanf(s.c_str(), "rgb(%lf%%,%lf%%,%lf%%)", &r, &g, &b) != 3) {
    throw Error(ErrorKind::InvalidArgument, "not an rgb() percentage color: " + s);
  }
  return {r * 2.55, g * 2.55, b * 2.55};
}

double luma(const Rgb& c) { return 0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b; }

std::string heatmap_svg(const PairMatrix& matrix, const std::string& title) {
  if (matrix.populated() == 0) throw Error(ErrorKind::EmptyPlot, "pair matrix has no populated cells");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& row : matrix.cells) {
    for (const auto& c : row) {
      if (!c) continue;
      lo = std::min(lo, *c);
      hi = std::max(hi, *c);
    }
  }
  const std::size_t n = matrix.languages.size();
  constexpr double cell = 64.0;
  constexpr double left = 90.0;
  constexpr double top = 80.0;
  const double width = left + cell * static_cast<double>(n) + 30.0;
  const double height = top + cell * static_cast<double>(n) + 30.0;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width) << "\" height=\"" << px(height)
      << "\" font-family=\"sans-serif\">\n"
      << "<defs><pattern id=\"hatch\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" "
         "patternTransform=\"rotate(45)\"><rect width=\"8\" height=\"8\" fill=\"white\"/>"
         "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#999\" stroke-width=\"2\"/></pattern></defs>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text class=\"title\" x=\"" << px(width / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n"
      << "<text x=\"" << px(left + cell * static_cast<double>(n) / 2) << "\" y=\"46\" text-anchor=\"middle\" "
      << "font-size=\"12\">target</text>\n"
      << "<text x=\"16\" y=\"" << px(top + cell * static_cast<double>(n) / 2) << "\" font-size=\"12\" "
      << "text-anchor=\"middle\" transform=\"rotate(-90 16 " << px(top + cell * static_cast<double>(n) / 2)
      << ")\">source</text>\n";
  for (std::size_t j = 0; j < n; ++j) {
    svg << "<text x=\"" << px(left + cell * (static_cast<double>(j) + 0.5)) << "\" y=\"" << px(top - 8)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(matrix.languages[j].str()) << "</text>\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double y = top + cell * static_cast<double>(i);
    svg << "<text x=\"" << px(left - 8) << "\" y=\"" << px(y + cell / 2 + 4)
        << "\" text-anchor=\"end\" font-size=\"12\">" << xml_escape(matrix.languages[i].str()) << "</text>\n";
    for (std::size_t j = 0; j < n; ++j) {
      const double x = left + cell * static_cast<double>(j);
      const auto& value = matrix.cells[i][j];
      const std::string pos = "x=\"" + px(x) + "\" y=\"" + px(y) + "\" width=\"" + px(cell) + "\" height=\"" +
                              px(cell) + "\"";
      const std::string ids = " data-source=\"" + xml_escape(matrix.languages[i].str()) + "\" data-target=\"" +
                              xml_escape(matrix.languages[j].str()) + "\"";
      if (!value) {
        svg << "<rect class=\"cell absent\"" << ids << " " << pos << " fill=\"url(#hatch)\" stroke=\"white\"/>\n";
        continue;
      }
      const double t = hi > lo ? (*value - lo) / (hi - lo) : 0.5;
      const Rgb c = heat_color(t);
      svg << "<rect class=\"cell\"" << ids << " data-value=\"" << format_sig6(*value) << "\" " << pos
          << " fill=\"" << css_color(c) << "\" stroke=\"white\"/>"
          << "<text x=\"" << px(x + cell / 2) << "\" y=\"" << px(y + cell / 2 + 4)
          << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"" << (luma(c) < 128.0 ? "white" : "black") << "\">"
          << fmt("%.2f", *value) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

void render_heatmap(const PairMatrix& matrix, const std::string& title, const std::filesystem::path& path) {
  const auto text = heatmap_svg(matrix, title);
  auto out = open_out(path);
  out << text;
}

}  // namespace vowelspace
