#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vowelspace/formant.hpp"
#include "vowelspace/inventory.hpp"
#include "vowelspace/metrics.hpp"

namespace vowelspace {

// Parameters for a whole pipeline run. Loaded from `key = value` lines;
// unknown keys are rejected.
struct Config {
  AnalysisParams analysis;
  // Empty means the bundled inventories.
  std::filesystem::path inventory;
  std::filesystem::path out_dir = ".";
  SummaryWeighting weighting = SummaryWeighting::PerVowel;
  VowelFilter matrix_vowels = VowelFilter::All;

  // Every key that influences outputs; embedded in output files.
  nlohmann::json parameters() const;
  InventoryRegistry registry() const;
};

Config parse_config(std::string_view text, std::string_view origin = "<config>");
Config load_config(const std::filesystem::path& path);
void validate(const Config& config);

inline constexpr const char* kManifestHeader = "wav_path,system,speaker,native_lang,target_lang,vowel,role";

struct ManifestEntry {
  std::filesystem::path wav_path;
  std::string system;
  std::string speaker;
  LanguageCode native_language;
  LanguageCode target_language;
  std::string vowel;
  Role role = Role::Test;
  std::size_t line = 0;
};

// Relative wav paths resolve against the manifest's directory. All row
// problems are collected into one ManifestParseError.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path, const InventoryRegistry& inventories);

}  // namespace vowelspace
