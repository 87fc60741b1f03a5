#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

// Phase 2 morphological preprocessing: Light10-style affix stripping and
// dictionary lemmatization.
namespace adi::morph {

enum class MorphMode { None, Stem, Lemma, LemmaThenStem };

struct MorphConfig {
  MorphMode mode = MorphMode::None;
  bool operator==(const MorphConfig&) const = default;
};

std::string_view to_string(MorphMode mode);
// Throws InvalidValue for unknown names.
MorphMode parse_morph_mode(std::string_view name);

// Exact-lookup lemma dictionary. Keys are stored letter-normalized and
// queries are normalized the same way before lookup.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const std::vector<std::pair<std::string, std::string>>& entries);

  static Lexicon bundled();
  // TSV of (surface, lemma); the first entry for a surface form wins.
  static Lexicon from_text(std::string_view text);
  static Lexicon load(const std::filesystem::path& path);

  const std::string* find(std::string_view token) const;
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  // Entries in insertion order, for persistence.
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::unordered_map<std::string, std::string> map_;
  std::vector<std::pair<std::string, std::string>> entries_;
};

inline constexpr std::size_t kMinStemLength = 3;

const std::vector<std::u32string>& prefixes();
const std::vector<std::u32string>& suffixes();

std::string light_stem(std::string_view token);
std::string lemmatize(std::string_view token, const Lexicon& lexicon);
std::string apply_morph(std::string_view text, const MorphConfig& config, const Lexicon& lexicon);

// [none, stem, lemma, lemma_then_stem]
std::vector<MorphConfig> enumerate_morph_configs();

}  // namespace adi::morph
