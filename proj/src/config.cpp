#include "vowelspace/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "vowelspace/error.hpp"
#include "vowelspace/report.hpp"

namespace vowelspace {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_number(std::string_view key, std::string_view value) {
  const std::string text(value);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::ConfigError, std::string(key) + ": '" + text + "' is not a number");
  }
  return v;
}

int to_int(std::string_view key, std::string_view value) {
  const double v = to_number(key, value);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw Error(ErrorKind::ConfigError, std::string(key) + ": expected an integer");
  }
  return static_cast<int>(v);
}

}  // namespace

nlohmann::json Config::parameters() const {
  const auto& a = analysis;
  return {
      {"analysis_rate", a.analysis_rate},
      {"lpc_order", a.lpc_order},
      {"preemphasis", a.preemphasis},
      {"lpc_frame_ms", a.lpc_frame_ms},
      {"lifter_ms", a.lifter_ms},
      {"frame_ms", a.segment.frame_ms},
      {"hop_ms", a.segment.hop_ms},
      {"threshold_db", a.segment.threshold_db},
      {"min_silence_ms", a.segment.min_silence_ms},
      {"min_voiced_ms", a.segment.min_voiced_ms},
      {"floor_headroom_db", a.segment.floor_headroom_db},
      {"f1_min", a.gates.f1_min},
      {"f1_max", a.gates.f1_max},
      {"f2_min", a.gates.f2_min},
      {"f2_max", a.gates.f2_max},
      {"max_bandwidth", a.gates.max_bandwidth},
      {"inventory", inventory.empty() ? std::string("bundled") : inventory.generic_string()},
      {"summary_weighting", weighting == SummaryWeighting::PerToken ? "per-token" : "per-vowel"},
      {"matrix_vowels", std::string(to_string(matrix_vowels))},
  };
}

InventoryRegistry Config::registry() const {
  return inventory.empty() ? InventoryRegistry::bundled() : InventoryRegistry::load(inventory);
}

void validate(const Config& config) {
  const auto& a = config.analysis;
  auto positive = [](const char* key, double v) {
    if (!(v > 0.0)) throw Error(ErrorKind::ConfigError, std::string(key) + " must be positive");
  };
  positive("analysis_rate", a.analysis_rate);
  positive("lpc_order", a.lpc_order);
  positive("preemphasis", a.preemphasis);
  positive("lpc_frame_ms", a.lpc_frame_ms);
  if (!(a.lifter_ms >= 0.0)) throw Error(ErrorKind::ConfigError, "lifter_ms must not be negative");
  positive("frame_ms", a.segment.frame_ms);
  positive("hop_ms", a.segment.hop_ms);
  positive("threshold_db", a.segment.threshold_db);
  positive("min_silence_ms", a.segment.min_silence_ms);
  positive("min_voiced_ms", a.segment.min_voiced_ms);
  positive("floor_headroom_db", a.segment.floor_headroom_db);
  positive("f1_min", a.gates.f1_min);
  positive("f1_max", a.gates.f1_max);
  positive("f2_min", a.gates.f2_min);
  positive("f2_max", a.gates.f2_max);
  positive("max_bandwidth", a.gates.max_bandwidth);
  if (a.lpc_order < 2) throw Error(ErrorKind::ConfigError, "lpc_order must be at least 2");
  if (!(a.preemphasis < 1.0)) throw Error(ErrorKind::ConfigError, "preemphasis must be below 1");
  if (!(a.gates.f1_min < a.gates.f1_max) || !(a.gates.f2_min < a.gates.f2_max)) {
    throw Error(ErrorKind::ConfigError, "formant gate minimum must be below its maximum");
  }
}

Config parse_config(std::string_view text, std::string_view origin) {
  Config config;
  auto& a = config.analysis;
  const std::map<std::string, std::function<void(std::string_view, std::string_view)>> setters{
      {"analysis_rate", [&](auto k, auto v) { a.analysis_rate = to_int(k, v); }},
      {"lpc_order", [&](auto k, auto v) { a.lpc_order = to_int(k, v); }},
      {"preemphasis", [&](auto k, auto v) { a.preemphasis = to_number(k, v); }},
      {"lpc_frame_ms", [&](auto k, auto v) { a.lpc_frame_ms = to_number(k, v); }},
      {"lifter_ms", [&](auto k, auto v) { a.lifter_ms = to_number(k, v); }},
      {"frame_ms", [&](auto k, auto v) { a.segment.frame_ms = to_number(k, v); }},
      {"hop_ms", [&](auto k, auto v) { a.segment.hop_ms = to_number(k, v); }},
      {"threshold_db", [&](auto k, auto v) { a.segment.threshold_db = to_number(k, v); }},
      {"min_silence_ms", [&](auto k, auto v) { a.segment.min_silence_ms = to_number(k, v); }},
      {"min_voiced_ms", [&](auto k, auto v) { a.segment.min_voiced_ms = to_number(k, v); }},
      {"floor_headroom_db", [&](auto k, auto v) { a.segment.floor_headroom_db = to_number(k, v); }},
      {"f1_min", [&](auto k, auto v) { a.gates.f1_min = to_number(k, v); }},
      {"f1_max", [&](auto k, auto v) { a.gates.f1_max = to_number(k, v); }},
      {"f2_min", [&](auto k, auto v) { a.gates.f2_min = to_number(k, v); }},
      {"f2_max", [&](auto k, auto v) { a.gates.f2_max = to_number(k, v); }},
      {"max_bandwidth", [&](auto k, auto v) { a.gates.max_bandwidth = to_number(k, v); }},
      {"inventory", [&](auto, auto v) { config.inventory = std::filesystem::path(std::string(v)); }},
      {"out_dir", [&](auto, auto v) { config.out_dir = std::filesystem::path(std::string(v)); }},
      {"summary_weighting",
       [&](auto k, auto v) {
         if (v == "per-vowel") {
           config.weighting = SummaryWeighting::PerVowel;
         } else if (v == "per-token") {
           config.weighting = SummaryWeighting::PerToken;
         } else {
           throw Error(ErrorKind::ConfigError, std::string(k) + " must be per-vowel or per-token");
         }
       }},
      {"matrix_vowels",
       [&](auto k, auto v) {
         try {
           config.matrix_vowels = parse_vowel_filter(v);
         } catch (const Error&) {
           throw Error(ErrorKind::ConfigError, std::string(k) + " must be all, shared or non-shared");
         }
       }},
  };

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::ConfigError, where + "expected key = value");
    const auto key = trim(content.substr(0, eq));
    const auto value = trim(content.substr(eq + 1));
    const auto setter = setters.find(std::string(key));
    if (setter == setters.end()) throw Error(ErrorKind::ConfigError, where + "unknown key '" + std::string(key) + "'");
    try {
      setter->second(key, value);
    } catch (const Error& e) {
      throw Error(ErrorKind::ConfigError, where + e.what());
    }
  }
  validate(config);
  return config;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto config = parse_config(buf.str(), path.string());
  if (config.inventory.is_relative() && !config.inventory.empty()) {
    config.inventory = path.parent_path() / config.inventory;
  }
  return config;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path, const InventoryRegistry& inventories) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ManifestParseError, "cannot read manifest " + path.string());
  const auto base = path.parent_path();

  std::vector<ManifestEntry> entries;
  std::vector<std::string> problems;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    const auto where = path.string() + ":" + std::to_string(line_no) + ": ";
    if (!have_header) {
      if (line != kManifestHeader) {
        throw Error(ErrorKind::ManifestParseError, where + "expected header '" + kManifestHeader + "'");
      }
      have_header = true;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 7) {
      problems.push_back(where + "expected 7 fields, got " + std::to_string(f.size()));
      continue;
    }
    try {
      ManifestEntry e;
      e.wav_path = std::filesystem::path(f[0]);
      if (e.wav_path.is_relative()) e.wav_path = base / e.wav_path;
      e.system = f[1];
      e.speaker = f[2];
      e.native_language = inventories.language(f[3]);
      e.target_language = inventories.language(f[4]);
      e.vowel = f[5];
      e.role = parse_role(f[6]);
      e.line = line_no;
      if (f[0].empty() || e.system.empty() || e.speaker.empty()) {
        throw Error(ErrorKind::InvalidArgument, "wav_path, system and speaker must be non-empty");
      }
      if (e.role == Role::Anchor && e.native_language != e.target_language) {
        throw Error(ErrorKind::InvalidArgument, "anchor rows need native_lang == target_lang");
      }
      if (!inventories.inventory(e.target_language).contains(e.vowel)) {
        throw Error(ErrorKind::InvalidArgument,
                    "/" + e.vowel + "/ is not in the " + e.target_language.str() + " inventory");
      }
      entries.push_back(std::move(e));
    } catch (const Error& e) {
      problems.push_back(where + e.what());
    }
  }
  // Nothing but blanks and comments: an empty manifest, not a malformed one.
  if (!have_header) return entries;
  if (!problems.empty()) {
    std::string message;
    for (const auto& p : problems) message += (message.empty() ? "" : "\n") + p;
    throw Error(ErrorKind::ManifestParseError, message);
  }
  return entries;
}

}  // namespace vowelspace
