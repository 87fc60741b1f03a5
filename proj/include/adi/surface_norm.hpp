#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

// Phase 1 surface cleaning: five independently toggleable steps, applied in
// the fixed order normalize_letters -> remove_diacritics ->
// remove_punct_emoji -> remove_non_arabic -> remove_stopwords.
namespace adi::surface {

struct SurfaceConfig {
  bool normalize_letters = false;
  bool remove_punct_emoji = false;
  bool remove_stopwords = false;
  bool remove_diacritics = false;
  bool remove_non_arabic = false;

  bool operator==(const SurfaceConfig&) const = default;

  static SurfaceConfig all();
  bool any() const;
  // Compact "01101" flag string in enumeration bit order
  // (normalize, punct_emoji, stopwords, diacritics, non_arabic).
  std::string flags() const;
};

// Set of stop tokens. Lookups also match entries after letter normalization
// and/or diacritic removal, so a stoplist written in standard orthography
// keeps working when earlier steps have rewritten the tokens.
class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(std::vector<std::string> entries);

  static Stoplist bundled();
  // One token per line, UTF-8; blank lines ignored.
  static Stoplist from_text(std::string_view text);
  static Stoplist load(const std::filesystem::path& path);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::string>& entries() const { return entries_; }

  bool contains(const std::string& token) const { return views_[0].count(token) > 0; }
  bool contains(const std::string& token, bool letters_normalized, bool diacritics_removed) const;

 private:
  std::vector<std::string> entries_;
  // Index = letters_normalized | diacritics_removed << 1.
  std::array<std::unordered_set<std::string>, 4> views_;
};

std::string normalize_letters(std::string_view text);
std::string remove_diacritics(std::string_view text);
std::string remove_punct_emoji(std::string_view text);
// Throws MissingStoplist when the stoplist is empty.
std::string remove_stopwords(std::string_view text, const Stoplist& stoplist);
std::string remove_non_arabic(std::string_view text);

std::string apply_surface(std::string_view text, const SurfaceConfig& config, const Stoplist& stoplist);

// All 32 configs; config k has bit 0 = normalize_letters, bit 1 =
// remove_punct_emoji, bit 2 = remove_stopwords, bit 3 = remove_diacritics,
// bit 4 = remove_non_arabic.
std::vector<SurfaceConfig> enumerate_surface_configs();

// Scalar-level helpers shared with the morphology module.
char32_t normalize_letter(char32_t c);
bool is_diacritic(char32_t c);

}  // namespace adi::surface
