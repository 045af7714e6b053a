#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vowelspace/inventory.hpp"
#include "vowelspace/normalize.hpp"

namespace vowelspace {

enum class Role { Anchor, Test };

std::string_view to_string(Role role);
Role parse_role(std::string_view text);

// Normalized realizations of one vowel by one speaker/system. Anchors are
// native productions: source_language == target_language.
struct VowelObservationSet {
  std::string system_id;
  std::string speaker_id;
  LanguageCode source_language;
  LanguageCode target_language;
  std::string vowel;
  std::vector<NormalizedPoint> points;
  Role role = Role::Test;
};

struct MetricRow {
  std::string system_id;
  LanguageCode source_language;
  LanguageCode target_language;
  std::string vowel;
  bool shared = false;
  double distance = 0.0;
  double compactness_sd = 0.0;
  std::size_t n_points = 0;

  bool operator==(const MetricRow&) const = default;
};

double vowel_distance(const NormalizedPoint& test, const NormalizedPoint& anchor);

// Radial SD: sqrt(var(z1) + var(z2)) with population variances.
double vowel_compactness(std::span<const NormalizedPoint> points);

// Component-wise median in z-space.
NormalizedPoint representative_point(std::span<const NormalizedPoint> points);

// One row per test set, in input order. Anchor sets sharing a
// (target language, vowel) are pooled.
std::vector<MetricRow> build_metric_rows(std::span<const VowelObservationSet> observations,
                                         const InventoryRegistry& inventories);

enum class SummaryWeighting { PerVowel, PerToken };

struct SummaryCell {
  double mean_distance = 0.0;
  double mean_compactness = 0.0;
  std::size_t rows = 0;
};

// Table-2 shaped block for one system; a side without rows stays empty.
struct SystemSummary {
  std::optional<SummaryCell> shared;
  std::optional<SummaryCell> non_shared;
};

std::map<std::string, SystemSummary> shared_summary(std::span<const MetricRow> rows,
                                                    SummaryWeighting weighting = SummaryWeighting::PerVowel);

enum class VowelFilter { All, Shared, NonShared };

std::string_view to_string(VowelFilter filter);
VowelFilter parse_vowel_filter(std::string_view text);

// Source (rows) x target (columns) mean distance. Cells without rows are
// absent, never zero.
struct PairMatrix {
  std::vector<LanguageCode> languages;
  std::vector<std::vector<std::optional<double>>> cells;

  std::optional<double> at(const LanguageCode& source, const LanguageCode& target) const;
  std::size_t populated() const;
};

PairMatrix pair_matrix(std::span<const MetricRow> rows, VowelFilter filter = VowelFilter::All);

// pair_matrix applied to each system's rows separately.
std::map<std::string, PairMatrix> pair_matrices(std::span<const MetricRow> rows,
                                                VowelFilter filter = VowelFilter::All);

}  // namespace vowelspace
