#include "vowelspace/inventory.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "bundled_inventory.hpp"
#include "vowelspace/error.hpp"

namespace vowelspace {

namespace {

// Decodes UTF-8 into code points; returns false on malformed input.
bool decode_utf8(std::string_view s, std::vector<char32_t>& out) {
  out.clear();
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      cp = c;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + static_cast<std::size_t>(extra) >= s.size()) return false;
    for (int k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(extra) + 1;
  }
  return true;
}

bool is_vowel_letter(char32_t cp) {
  static constexpr char32_t letters[] = {
      U'a', U'e', U'i', U'o', U'u', U'y', U'æ', U'ø', U'œ', U'ɐ', U'ɑ', U'ɒ', U'ɔ', U'ə', U'ɘ',
      U'ɚ', U'ɛ', U'ɜ', U'ɝ', U'ɞ', U'ɤ', U'ɨ', U'ɪ', U'ɯ', U'ɵ', U'ɶ', U'ʉ', U'ʊ', U'ʌ', U'ʏ'};
  return std::find(std::begin(letters), std::end(letters), cp) != std::end(letters);
}

bool is_vowel_modifier(char32_t cp) {
  return cp == U'ː' || cp == U'ˑ' || cp == 0x0303 /* nasal tilde */ || cp == U'˞';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

LanguageCode::LanguageCode(std::string_view code) : code_(code) {
  const bool ok = code.size() >= 2 && code.size() <= 3 &&
                  std::all_of(code.begin(), code.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
  if (!ok) {
    throw Error(ErrorKind::UnknownLanguage, "malformed language code '" + std::string(code) + "'");
  }
}

bool VowelInventory::contains(std::string_view vowel) const {
  return std::find(vowels.begin(), vowels.end(), vowel) != vowels.end();
}

bool is_ipa_vowel_symbol(std::string_view symbol) {
  std::vector<char32_t> cps;
  if (symbol.empty() || !decode_utf8(symbol, cps) || cps.empty()) return false;
  if (!is_vowel_letter(cps.front())) return false;
  return std::all_of(cps.begin() + 1, cps.end(), is_vowel_modifier);
}

InventoryRegistry InventoryRegistry::parse(std::string_view text, std::string_view origin) {
  InventoryRegistry registry;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::InventoryValidation,
                std::string(origin) + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto tab = content.find('\t');
    if (tab == std::string_view::npos) fail("expected CODE<TAB>symbols");
    const auto code_text = trim(content.substr(0, tab));
    LanguageCode code;
    try {
      code = LanguageCode(code_text);
    } catch (const Error&) {
      fail("malformed language code '" + std::string(code_text) + "'");
    }
    if (registry.inventories_.contains(code)) fail("duplicate language " + code.str());

    VowelInventory inv{code, {}};
    std::istringstream symbols{std::string(content.substr(tab + 1))};
    std::string symbol;
    while (symbols >> symbol) {
      if (!is_ipa_vowel_symbol(symbol)) fail("'" + symbol + "' is not an IPA vowel symbol");
      if (inv.contains(symbol)) fail("duplicate symbol '" + symbol + "' for " + code.str());
      inv.vowels.push_back(symbol);
    }
    if (inv.vowels.empty()) fail("empty inventory for " + code.str());
    registry.inventories_.emplace(code, std::move(inv));
  }
  if (registry.inventories_.empty()) {
    throw Error(ErrorKind::InventoryValidation, std::string(origin) + ": no inventories");
  }
  return registry;
}

InventoryRegistry InventoryRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

InventoryRegistry InventoryRegistry::bundled() {
  auto registry = parse(bundled_inventory_text(), "bundled inventories");
  validate_reference_counts(registry);
  return registry;
}

const VowelInventory& InventoryRegistry::inventory(const LanguageCode& code) const {
  const auto it = inventories_.find(code);
  if (it == inventories_.end()) throw Error(ErrorKind::UnknownLanguage, code.str());
  return it->second;
}

LanguageCode InventoryRegistry::language(std::string_view code) const {
  LanguageCode parsed(code);
  if (!contains(parsed)) throw Error(ErrorKind::UnknownLanguage, std::string(code));
  return parsed;
}

std::vector<LanguageCode> InventoryRegistry::languages() const {
  std::vector<LanguageCode> out;
  for (const auto& [code, inv] : inventories_) out.push_back(code);
  return out;
}

const std::map<std::string, std::size_t>& reference_vowel_counts() {
  static const std::map<std::string, std::size_t> counts{
      {"DE", 17}, {"EN", 12}, {"ES", 5}, {"FR", 14}, {"JA", 5}, {"KO", 7}};
  return counts;
}

void validate_reference_counts(const InventoryRegistry& registry) {
  for (const auto& [code, expected] : reference_vowel_counts()) {
    const LanguageCode lang(code);
    if (!registry.contains(lang)) {
      throw Error(ErrorKind::InventoryValidation, "missing inventory for " + code);
    }
    const auto actual = registry.inventory(lang).size();
    if (actual != expected) {
      throw Error(ErrorKind::InventoryValidation, code + " has " + std::to_string(actual) +
                                                      " vowels, expected " + std::to_string(expected));
    }
  }
}

std::string_view bundled_inventory_text() { return detail::kBundledInventory; }

std::set<std::string> shared_vowels(const InventoryRegistry& registry, const LanguageCode& a,
                                    const LanguageCode& b) {
  const auto& inv_a = registry.inventory(a);
  const auto& inv_b = registry.inventory(b);
  std::set<std::string> out;
  for (const auto& v : inv_a.vowels) {
    if (inv_b.contains(v)) out.insert(v);
  }
  return out;
}

bool is_shared(const InventoryRegistry& registry, std::string_view vowel, const LanguageCode& a,
               const LanguageCode& b) {
  const bool in_a = registry.inventory(a).contains(vowel);
  const bool in_b = registry.inventory(b).contains(vowel);
  if (!in_a && !in_b) {
    throw Error(ErrorKind::VowelNotInPair,
                "/" + std::string(vowel) + "/ belongs to neither " + a.str() + " nor " + b.str());
  }
  return in_a && in_b;
}

}  // namespace vowelspace
