#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vowelspace {

// Upper-case language tag such as "EN". Registry membership is checked on lookup.
class LanguageCode {
 public:
  LanguageCode() = default;
  explicit LanguageCode(std::string_view code);

  const std::string& str() const noexcept { return code_; }
  auto operator<=>(const LanguageCode&) const = default;

 private:
  std::string code_;
};

struct VowelInventory {
  LanguageCode language;
  // Symbols in file order.
  std::vector<std::string> vowels;

  bool contains(std::string_view vowel) const;
  std::size_t size() const noexcept { return vowels.size(); }
};

// True if `symbol` is one IPA vowel letter followed by optional length,
// nasalization or rhoticity marks.
bool is_ipa_vowel_symbol(std::string_view symbol);

class InventoryRegistry {
 public:
  // Parses `CODE<TAB>sym sym ...` lines; `#` starts a comment line.
  static InventoryRegistry parse(std::string_view text, std::string_view origin = "<memory>");
  static InventoryRegistry load(const std::filesystem::path& path);
  // The shipped inventories, checked against the reference vowel counts.
  static InventoryRegistry bundled();

  bool contains(const LanguageCode& code) const { return inventories_.contains(code); }
  const VowelInventory& inventory(const LanguageCode& code) const;
  LanguageCode language(std::string_view code) const;
  std::vector<LanguageCode> languages() const;

 private:
  std::map<LanguageCode, VowelInventory> inventories_;
};

// Monophthong counts per language for the bundled inventory data.
const std::map<std::string, std::size_t>& reference_vowel_counts();

// Throws InventoryValidation if any referenced language is missing or
// has a different count.
void validate_reference_counts(const InventoryRegistry& registry);

std::string_view bundled_inventory_text();

std::set<std::string> shared_vowels(const InventoryRegistry& registry, const LanguageCode& a,
                                    const LanguageCode& b);

// Throws VowelNotInPair when the vowel belongs to neither language.
bool is_shared(const InventoryRegistry& registry, std::string_view vowel, const LanguageCode& a,
               const LanguageCode& b);

}  // namespace vowelspace
