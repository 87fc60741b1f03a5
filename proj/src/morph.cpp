#include "adi/morph.hpp"

#include "adi/error.hpp"
#include "adi/resources.hpp"
#include "adi/serialize.hpp"
#include "adi/surface_norm.hpp"
#include "adi/unicode.hpp"

namespace adi::morph {

std::string_view to_string(MorphMode mode) {
  switch (mode) {
    case MorphMode::None: return "none";
    case MorphMode::Stem: return "stem";
    case MorphMode::Lemma: return "lemma";
    case MorphMode::LemmaThenStem: return "lemma_then_stem";
  }
  return "none";
}

MorphMode parse_morph_mode(std::string_view name) {
  for (auto mode : {MorphMode::None, MorphMode::Stem, MorphMode::Lemma, MorphMode::LemmaThenStem}) {
    if (to_string(mode) == name) return mode;
  }
  throw Error(ErrorCode::InvalidValue, "unknown morph mode '" + std::string(name) + "'");
}

Lexicon::Lexicon(const std::vector<std::pair<std::string, std::string>>& entries) {
  for (const auto& [surface, lemma] : entries) {
    if (map_.emplace(surface::normalize_letters(surface), lemma).second) entries_.emplace_back(surface, lemma);
  }
}

Lexicon Lexicon::from_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto at = static_cast<std::int64_t>(line_no);
    if (!unicode::is_valid_utf8(line)) throw Error(ErrorCode::InvalidEncoding, "lexicon line " + std::to_string(line_no), at);
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw Error(ErrorCode::MalformedRow, "lexicon line " + std::to_string(line_no) + " is not (surface, lemma)", at);
    }
    entries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return Lexicon(entries);
}

Lexicon Lexicon::bundled() { return from_text(resources::default_lexicon_text()); }

Lexicon Lexicon::load(const std::filesystem::path& path) { return from_text(io::read_file(path)); }

const std::string* Lexicon::find(std::string_view token) const {
  auto it = map_.find(surface::normalize_letters(token));
  return it == map_.end() ? nullptr : &it->second;
}

const std::vector<std::u32string>& prefixes() {
  static const std::vector<std::u32string> list = {U"وال", U"بال", U"كال", U"فال", U"لل", U"ال", U"و"};
  return list;
}

const std::vector<std::u32string>& suffixes() {
  static const std::vector<std::u32string> list = {U"هما", U"كما", U"تين", U"تان", U"ات", U"ون", U"ين", U"ان",
                                                   U"ها",  U"ية",  U"ته",  U"ة",   U"ه",  U"ي",  U"ا"};
  return list;
}

std::string light_stem(std::string_view token) {
  std::u32string w = unicode::decode(token);
  // At most one prefix, then at most one suffix: the first rule in list
  // order that matches and leaves at least kMinStemLength scalars.
  for (const auto& p : prefixes()) {
    if (w.size() >= p.size() + kMinStemLength && w.compare(0, p.size(), p) == 0) {
      w.erase(0, p.size());
      break;
    }
  }
  for (const auto& s : suffixes()) {
    if (w.size() >= s.size() + kMinStemLength && w.compare(w.size() - s.size(), s.size(), s) == 0) {
      w.erase(w.size() - s.size());
      break;
    }
  }
  return unicode::encode(w);
}

std::string lemmatize(std::string_view token, const Lexicon& lexicon) {
  if (token.empty()) return {};
  const std::string* lemma = lexicon.find(token);
  return lemma ? *lemma : std::string(token);
}

std::string apply_morph(std::string_view text, const MorphConfig& config, const Lexicon& lexicon) {
  if (config.mode == MorphMode::None) return std::string(text);
  std::vector<std::string> tokens = unicode::split_whitespace(text);
  for (auto& tok : tokens) {
    switch (config.mode) {
      case MorphMode::Stem: tok = light_stem(tok); break;
      case MorphMode::Lemma: tok = lemmatize(tok, lexicon); break;
      case MorphMode::LemmaThenStem: tok = light_stem(lemmatize(tok, lexicon)); break;
      case MorphMode::None: break;
    }
  }
  return unicode::join(tokens);
}

std::vector<MorphConfig> enumerate_morph_configs() {
  return {{MorphMode::None}, {MorphMode::Stem}, {MorphMode::Lemma}, {MorphMode::LemmaThenStem}};
}

}  // namespace adi::morph
