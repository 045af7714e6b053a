#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vowelspace/metrics.hpp"
#include "vowelspace/normalize.hpp"

namespace vowelspace {

// Ordered `key = value` lines written as `# ` comments above the CSV header.
using ParamBlock = std::vector<std::pair<std::string, std::string>>;

struct FormantRecord {
  std::string system;
  std::string speaker;
  std::string src_lang;
  std::string tgt_lang;
  std::string vowel;
  std::string role;
  std::size_t idx = 0;
  double f1_hz = 0.0;
  double f2_hz = 0.0;
};

struct NormalizedRecord {
  std::string system;
  std::string speaker;
  std::string src_lang;
  std::string tgt_lang;
  std::string vowel;
  std::string role;
  std::size_t idx = 0;
  double z1 = 0.0;
  double z2 = 0.0;
};

template <typename Row>
struct Table {
  ParamBlock params;
  std::vector<Row> rows;
};

inline constexpr const char* kFormantHeader = "system,speaker,src_lang,tgt_lang,vowel,role,idx,f1_hz,f2_hz";
inline constexpr const char* kNormalizedHeader = "system,speaker,src_lang,tgt_lang,vowel,role,idx,z1,z2";
inline constexpr const char* kMetricHeader = "system,src_lang,tgt_lang,vowel,shared,distance,compactness,n";

// Six significant digits, shortest form ("%.6g").
std::string format_sig6(double value);
double round_sig6(double value);

void write_table(const std::filesystem::path& path, const Table<FormantRecord>& table);
void write_table(const std::filesystem::path& path, const Table<NormalizedRecord>& table);
void write_table(const std::filesystem::path& path, const std::vector<MetricRow>& rows);

// Throw SchemaMismatch (with line number) on a wrong header, arity or field.
Table<FormantRecord> read_formant_table(const std::filesystem::path& path);
Table<NormalizedRecord> read_normalized_table(const std::filesystem::path& path);
std::vector<MetricRow> read_metric_table(const std::filesystem::path& path);

// Splits one CSV record; handles double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

ParamBlock to_param_block(const nlohmann::json& params);

nlohmann::json summary_json(const std::map<std::string, SystemSummary>& summary, SummaryWeighting weighting,
                            const nlohmann::json& params);
nlohmann::json pair_matrix_json(const std::map<std::string, PairMatrix>& matrices, VowelFilter filter,
                                const nlohmann::json& params);
std::map<std::string, PairMatrix> pair_matrices_from_json(const nlohmann::json& doc);

// Two-space indented dump with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json(const std::filesystem::path& path);

struct LabeledPoint {
  std::string label;
  NormalizedPoint point;
};

struct PlotSeries {
  std::string name;
  std::vector<LabeledPoint> points;
};

struct AxisRange {
  double min = -2.5;
  double max = 2.5;
};

// Normalized F2 runs right-to-left on x and normalized F1 top-to-bottom on y,
// so front vowels sit left and open vowels sit low.
struct VowelSpacePlot {
  std::string title;
  std::vector<PlotSeries> series;
  std::optional<AxisRange> z1_range;
  std::optional<AxisRange> z2_range;
};

struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
};

// Pixel positions of every point, series by series.
std::vector<std::vector<PixelPoint>> plot_coordinates(const VowelSpacePlot& plot);

std::string vowel_space_svg(const VowelSpacePlot& plot);
void render_vowel_space(const VowelSpacePlot& plot, const std::filesystem::path& path);

// Channels on the 0..255 scale, fractional so the ramp stays strictly monotone.
struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

// "rgb(R%,G%,B%)" with three decimals per channel.
std::string css_color(const Rgb& c);
Rgb parse_css_color(std::string_view text);

// Light-to-dark blue ramp; t in [0, 1], larger t is darker.
Rgb heat_color(double t);
double luma(const Rgb& c);

std::string heatmap_svg(const PairMatrix& matrix, const std::string& title);
void render_heatmap(const PairMatrix& matrix, const std::string& title, const std::filesystem::path& path);

std::string xml_escape(std::string_view text);

}  // namespace vowelspace
