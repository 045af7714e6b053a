#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "vowelspace/config.hpp"
#include "vowelspace/error.hpp"

namespace vowelspace {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoData = 2;

int exit_code_for(ErrorKind kind);

struct RunContext {
  Config config;
  std::filesystem::path out_dir;
  unsigned jobs = 1;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

// Subcommands. Each writes into ctx.out_dir and returns an exit code;
// fatal input problems are thrown as Error.

// Manifest -> formants.csv plus extract_errors.csv (failed files).
int cmd_extract(const std::filesystem::path& manifest, const RunContext& ctx);

// formants.csv -> normalized.csv plus speaker_stats.json.
int cmd_normalize(const std::filesystem::path& formants_csv, const RunContext& ctx);

// normalized.csv -> metrics.csv, summary.json, pair_matrix.json.
int cmd_metrics(const std::filesystem::path& normalized_csv, const RunContext& ctx);

struct PlotOptions {
  std::optional<std::filesystem::path> normalized_csv;
  std::optional<std::filesystem::path> pair_matrix_json;
  std::optional<std::string> system;
  std::optional<std::string> speaker;
  std::optional<std::string> vowel;
  std::optional<std::string> source;
  std::optional<std::string> target;
  std::string output = "vowel_space.svg";
  std::string title;
};

// Vowel-space diagram from normalized.csv, or one heatmap per system from
// pair_matrix.json.
int cmd_plot(const PlotOptions& options, const RunContext& ctx);

// JSON synthesis spec -> one WAV per vowel.
int cmd_synth(const std::filesystem::path& spec_file, const RunContext& ctx);

int cmd_inventory(const std::string& language_a, const std::string& language_b, const RunContext& ctx);

}  // namespace vowelspace
