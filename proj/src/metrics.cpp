#include "vowelspace/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vowelspace/error.hpp"

namespace vowelspace {

std::string_view to_string(Role role) { return role == Role::Anchor ? "anchor" : "test"; }

Role parse_role(std::string_view text) {
  if (text == "anchor") return Role::Anchor;
  if (text == "test") return Role::Test;
  throw Error(ErrorKind::InvalidArgument, "role must be 'anchor' or 'test', got '" + std::string(text) + "'");
}

std::string_view to_string(VowelFilter filter) {
  switch (filter) {
    case VowelFilter::All: return "all";
    case VowelFilter::Shared: return "shared";
    case VowelFilter::NonShared: return "non-shared";
  }
  return "all";
}

VowelFilter parse_vowel_filter(std::string_view text) {
  if (text == "all") return VowelFilter::All;
  if (text == "shared") return VowelFilter::Shared;
  if (text == "non-shared") return VowelFilter::NonShared;
  throw Error(ErrorKind::InvalidArgument, "vowel filter must be all, shared or non-shared");
}

double vowel_distance(const NormalizedPoint& test, const NormalizedPoint& anchor) {
  return std::hypot(test.z1 - anchor.z1, test.z2 - anchor.z2);
}

double vowel_compactness(std::span<const NormalizedPoint> points) {
  if (points.size() < 2) {
    throw Error(ErrorKind::InsufficientData, "compactness needs at least 2 points");
  }
  const auto n = static_cast<double>(points.size());
  double m1 = 0.0;
  double m2 = 0.0;
  for (const auto& p : points) {
    m1 += p.z1;
    m2 += p.z2;
  }
  m1 /= n;
  m2 /= n;
  double ss = 0.0;
  for (const auto& p : points) ss += (p.z1 - m1) * (p.z1 - m1) + (p.z2 - m2) * (p.z2 - m2);
  return std::sqrt(ss / n);
}

NormalizedPoint representative_point(std::span<const NormalizedPoint> points) {
  if (points.empty()) throw Error(ErrorKind::EmptyList, "no points");
  std::vector<double> z1;
  std::vector<double> z2;
  for (const auto& p : points) {
    z1.push_back(p.z1);
    z2.push_back(p.z2);
  }
  return {median(std::move(z1)), median(std::move(z2))};
}

std::vector<MetricRow> build_metric_rows(std::span<const VowelObservationSet> observations,
                                         const InventoryRegistry& inventories) {
  std::map<std::pair<LanguageCode, std::string>, std::vector<NormalizedPoint>> anchor_points;
  for (const auto& set : observations) {
    if (set.role != Role::Anchor) continue;
    if (set.source_language != set.target_language) {
      throw Error(ErrorKind::InvalidArgument, "anchor set for system '" + set.system_id +
                                                  "' mixes languages " + set.source_language.str() +
                                                  "/" + set.target_language.str());
    }
    auto& pool = anchor_points[{set.target_language, set.vowel}];
    pool.insert(pool.end(), set.points.begin(), set.points.end());
  }
  std::map<std::pair<LanguageCode, std::string>, NormalizedPoint> anchors;
  for (const auto& [key, points] : anchor_points) {
    if (!points.empty()) anchors.emplace(key, representative_point(points));
  }

  std::set<std::pair<LanguageCode, std::string>> missing;
  std::string first_missing_context;
  std::vector<MetricRow> rows;
  for (const auto& set : observations) {
    if (set.role != Role::Test) continue;
    if (set.points.empty()) {
      throw Error(ErrorKind::EmptyList, "test set for system '" + set.system_id + "' /" + set.vowel + "/ is empty");
    }
    const auto anchor = anchors.find({set.target_language, set.vowel});
    if (anchor == anchors.end()) {
      if (missing.empty()) first_missing_context = "system '" + set.system_id + "'";
      missing.insert({set.target_language, set.vowel});
      continue;
    }
    MetricRow row;
    row.system_id = set.system_id;
    row.source_language = set.source_language;
    row.target_language = set.target_language;
    row.vowel = set.vowel;
    row.shared = is_shared(inventories, set.vowel, set.source_language, set.target_language);
    row.distance = vowel_distance(representative_point(set.points), anchor->second);
    row.compactness_sd = vowel_compactness(set.points);
    row.n_points = set.points.size();
    rows.push_back(std::move(row));
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& [lang, vowel] : missing) {
      if (!list.empty()) list += ", ";
      list += "(" + lang.str() + ", /" + vowel + "/)";
    }
    throw Error(ErrorKind::MissingAnchor, "no anchor for " + list + " (first needed by " + first_missing_context + ")");
  }
  return rows;
}

std::map<std::string, SystemSummary> shared_summary(std::span<const MetricRow> rows,
                                                    SummaryWeighting weighting) {
  struct Acc {
    double distance = 0.0;
    double compactness = 0.0;
    double weight = 0.0;
    std::size_t rows = 0;
  };
  std::map<std::string, std::pair<Acc, Acc>> acc;
  for (const auto& row : rows) {
    auto& pair = acc[row.system_id];
    Acc& cell = row.shared ? pair.first : pair.second;
    const double w = weighting == SummaryWeighting::PerToken ? static_cast<double>(row.n_points) : 1.0;
    cell.distance += w * row.distance;
    cell.compactness += w * row.compactness_sd;
    cell.weight += w;
    ++cell.rows;
  }
  auto finish = [](const Acc& a) -> std::optional<SummaryCell> {
    if (a.rows == 0 || !(a.weight > 0.0)) return std::nullopt;
    return SummaryCell{a.distance / a.weight, a.compactness / a.weight, a.rows};
  };
  std::map<std::string, SystemSummary> out;
  for (const auto& [system, cells] : acc) out[system] = {finish(cells.first), finish(cells.second)};
  return out;
}

std::optional<double> PairMatrix::at(const LanguageCode& source, const LanguageCode& target) const {
  const auto s = std::find(languages.begin(), languages.end(), source);
  const auto t = std::find(languages.begin(), languages.end(), target);
  if (s == languages.end() || t == languages.end()) return std::nullopt;
  return cells[static_cast<std::size_t>(s - languages.begin())][static_cast<std::size_t>(t - languages.begin())];
}

std::size_t PairMatrix::populated() const {
  std::size_t count = 0;
  for (const auto& row : cells) {
    count += static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](const auto& c) { return c.has_value(); }));
  }
  return count;
}

PairMatrix pair_matrix(std::span<const MetricRow> rows, VowelFilter filter) {
  auto keep = [filter](const MetricRow& r) {
    return filter == VowelFilter::All || (filter == VowelFilter::Shared) == r.shared;
  };
  std::set<LanguageCode> languages;
  std::map<std::pair<LanguageCode, LanguageCode>, std::pair<double, std::size_t>> sums;
  for (const auto& row : rows) {
    languages.insert(row.source_language);
    languages.insert(row.target_language);
    if (!keep(row)) continue;
    auto& s = sums[{row.source_language, row.target_language}];
    s.first += row.distance;
    ++s.second;
  }
  PairMatrix m;
  m.languages.assign(languages.begin(), languages.end());
  m.cells.assign(m.languages.size(), std::vector<std::optional<double>>(m.languages.size()));
  for (std::size_t i = 0; i < m.languages.size(); ++i) {
    for (std::size_t j = 0; j < m.languages.size(); ++j) {
      const auto it = sums.find({m.languages[i], m.languages[j]});
      if (it != sums.end()) m.cells[i][j] = it->second.first / static_cast<double>(it->second.second);
    }
  }
  return m;
}

std::map<std::string, PairMatrix> pair_matrices(std::span<const MetricRow> rows, VowelFilter filter) {
  std::map<std::string, std::vector<MetricRow>> by_system;
  for (const auto& row : rows) by_system[row.system_id].push_back(row);
  std::map<std::string, PairMatrix> out;
  for (const auto& [system, system_rows] : by_system) out.emplace(system, pair_matrix(system_rows, filter));
  return out;
}

}  // namespace vowelspace
