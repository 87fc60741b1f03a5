#include "adi/surface_norm.hpp"

#include "adi/error.hpp"
#include "adi/resources.hpp"
#include "adi/serialize.hpp"
#include "adi/unicode.hpp"

namespace adi::surface {

SurfaceConfig SurfaceConfig::all() { return {true, true, true, true, true}; }

bool SurfaceConfig::any() const {
  return normalize_letters || remove_punct_emoji || remove_stopwords || remove_diacritics || remove_non_arabic;
}

std::string SurfaceConfig::flags() const {
  std::string s;
  for (bool b : {normalize_letters, remove_punct_emoji, remove_stopwords, remove_diacritics, remove_non_arabic}) {
    s.push_back(b ? '1' : '0');
  }
  return s;
}

char32_t normalize_letter(char32_t c) {
  switch (c) {
    case U'آ':  // alef with madda
    case U'أ':  // alef with hamza above
    case U'إ':  // alef with hamza below
    case U'ٱ':  // alef wasla
      return U'ا';
    case U'ى':  // alef maksura
    case U'ئ':  // yeh with hamza
      return U'ي';
    case U'ة':  // teh marbuta
      return U'ه';
    case U'ؤ':  // waw with hamza
      return U'و';
    default:
      return c;
  }
}

bool is_diacritic(char32_t c) {
  return (c >= 0x064B && c <= 0x0652) || c == 0x0670 || c == 0x0640;
}

namespace {

std::string map_scalars(std::string_view text, char32_t (*fn)(char32_t)) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : unicode::decode(text)) unicode::append_utf8(out, fn(c));
  return out;
}

std::string rejoin_tokens(std::string_view text, const auto& keep) {
  const std::u32string scalars = unicode::decode(text);
  std::string out;
  for (auto tok : unicode::split_whitespace(std::u32string_view(scalars))) {
    std::string t = unicode::encode(tok);
    if (!keep(tok, t)) continue;
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace

Stoplist::Stoplist(std::vector<std::string> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    views_[0].insert(e);
    const std::string n = normalize_letters(e);
    views_[1].insert(n);
    views_[2].insert(remove_diacritics(e));
    views_[3].insert(remove_diacritics(n));
  }
}

bool Stoplist::contains(const std::string& token, bool letters_normalized, bool diacritics_removed) const {
  const int view = (letters_normalized ? 1 : 0) | (diacritics_removed ? 2 : 0);
  return views_[view].count(token) > 0;
}

Stoplist Stoplist::from_text(std::string_view text) {
  std::vector<std::string> entries;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!unicode::is_valid_utf8(line)) {
      throw Error(ErrorCode::InvalidEncoding, "stoplist line " + std::to_string(line_no),
                  static_cast<std::int64_t>(line_no));
    }
    for (auto& tok : unicode::split_whitespace(line)) entries.push_back(std::move(tok));
  }
  return Stoplist(std::move(entries));
}

Stoplist Stoplist::bundled() { return from_text(resources::default_stoplist_text()); }

Stoplist Stoplist::load(const std::filesystem::path& path) { return from_text(io::read_file(path)); }

std::string normalize_letters(std::string_view text) { return map_scalars(text, normalize_letter); }

std::string remove_diacritics(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : unicode::decode(text)) {
    if (!is_diacritic(c)) unicode::append_utf8(out, c);
  }
  return out;
}

std::string remove_punct_emoji(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t c : unicode::decode(text)) {
    if (unicode::is_punctuation(c) || unicode::is_emoji(c)) {
      // A removed scalar acts as a separator ("a,b" -> "a b").
      pending_space = true;
      continue;
    }
    if (unicode::is_whitespace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    unicode::append_utf8(out, c);
  }
  return out;
}

std::string remove_stopwords(std::string_view text, const Stoplist& stoplist) {
  if (stoplist.empty()) throw Error(ErrorCode::MissingStoplist, "stopword removal enabled with an empty stoplist");
  return rejoin_tokens(text, [&](std::u32string_view, const std::string& t) { return !stoplist.contains(t); });
}

std::string remove_non_arabic(std::string_view text) {
  return rejoin_tokens(text, [](std::u32string_view tok, const std::string&) {
    for (char32_t c : tok) {
      if (unicode::is_arabic(c)) return true;
    }
    return false;
  });
}

std::string apply_surface(std::string_view text, const SurfaceConfig& config, const Stoplist& stoplist) {
  std::string out(text);
  if (config.normalize_letters) out = normalize_letters(out);
  if (config.remove_diacritics) out = remove_diacritics(out);
  if (config.remove_punct_emoji) out = remove_punct_emoji(out);
  if (config.remove_non_arabic) out = remove_non_arabic(out);
  if (config.remove_stopwords) {
    if (stoplist.empty()) throw Error(ErrorCode::MissingStoplist, "stopword removal enabled with an empty stoplist");
    out = rejoin_tokens(out, [&](std::u32string_view, const std::string& t) {
      return !stoplist.contains(t, config.normalize_letters, config.remove_diacritics);
    });
  }
  return out;
}

std::vector<SurfaceConfig> enumerate_surface_configs() {
  std::vector<SurfaceConfig> out;
  out.reserve(32);
  for (unsigned k = 0; k < 32; ++k) {
    SurfaceConfig c;
    c.normalize_letters = k & 1u;
    c.remove_punct_emoji = k & 2u;
    c.remove_stopwords = k & 4u;
    c.remove_diacritics = k & 8u;
    c.remove_non_arabic = k & 16u;
    out.push_back(c);
  }
  return out;
}

}  // namespace adi::surface
