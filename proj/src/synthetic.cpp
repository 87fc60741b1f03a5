#include "adi/synthetic.hpp"

#include <array>
#include <cstdio>
#include <set>

#include "adi/error.hpp"
#include "adi/random.hpp"
#include "adi/unicode.hpp"

namespace adi::synthetic {

namespace {

constexpr std::array<std::string_view, 18> kCountries{
    "Algeria", "Bahrain", "Egypt", "Iraq",      "Jordan",       "Kuwait", "Lebanon", "Libya", "Morocco",
    "Oman",    "Palestine", "Qatar", "Saudi_Arabia", "Sudan", "Syria",  "Tunisia", "UAE",   "Yemen"};

// U+0628..U+064A without tatweel and the gap between GHAIN and FEH.
std::vector<char32_t> arabic_alphabet() {
  std::vector<char32_t> out;
  for (char32_t c = 0x0627; c <= 0x063A; ++c) {
    if (c == 0x0629) continue;
    out.push_back(c);
  }
  for (char32_t c = 0x0641; c <= 0x064A; ++c) {
    if (c == 0x0649) continue;
    out.push_back(c);
  }
  return out;
}

std::string random_word(Rng& rng, const std::vector<char32_t>& letters, int min_len, int max_len) {
  const auto len = uniform_int(rng, min_len, max_len);
  std::string w;
  for (std::int64_t i = 0; i < len; ++i) unicode::append_utf8(w, letters[uniform_index(rng, letters.size())]);
  return w;
}

std::vector<std::string> unique_words(Rng& rng, const std::vector<char32_t>& letters, std::size_t count, int min_len,
                                      int max_len, std::set<std::string>& taken) {
  std::vector<std::string> out;
  while (out.size() < count) {
    auto w = random_word(rng, letters, min_len, max_len);
    if (taken.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

std::string make_id(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "syn-%06zu", n);
  return buf;
}

// docs[c][i] -> interleaved per-class 80/10/10 split.
Splits split(const std::vector<std::vector<std::string>>& docs, const std::vector<std::string>& names) {
  std::vector<corpus::Document> train, dev, test;
  std::size_t next_id = 1;
  std::size_t longest = 0;
  for (const auto& d : docs) longest = std::max(longest, d.size());
  for (std::size_t i = 0; i < longest; ++i) {
    for (std::size_t c = 0; c < docs.size(); ++c) {
      const std::size_t n = docs[c].size();
      if (i >= n) continue;
      corpus::Document doc{make_id(next_id++), docs[c][i], names[c]};
      const std::size_t train_n = n * 8 / 10;
      const std::size_t dev_n = n / 10;
      if (i < train_n) train.push_back(std::move(doc));
      else if (i < train_n + dev_n) dev.push_back(std::move(doc));
      else test.push_back(std::move(doc));
    }
  }
  return Splits{corpus::Corpus(std::move(train)), corpus::Corpus(std::move(dev)), corpus::Corpus(std::move(test))};
}

}  // namespace

std::vector<std::string> class_names(int classes) {
  std::vector<std::string> out;
  for (int c = 0; c < classes; ++c) {
    out.push_back(c < static_cast<int>(kCountries.size()) ? std::string(kCountries[c]) : "class_" + std::to_string(c));
  }
  return out;
}

Splits generate(const SyntheticParams& p) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, "synthetic: " + what); };
  if (p.classes < 2) bad("need at least 2 classes");
  if (p.docs_per_class < 10) bad("need at least 10 documents per class");
  if (p.private_vocab < 1 || p.shared_vocab < 0) bad("private vocabulary must be positive, shared must not be negative");
  if (p.min_tokens < 1 || p.min_tokens > p.max_tokens) bad("token range must satisfy 1 <= min <= max");
  if (!(p.private_rate >= 0.0 && p.private_rate <= 1.0)) bad("private rate must lie in [0, 1]");

  Rng rng(p.seed);
  const auto letters = arabic_alphabet();
  std::set<std::string> taken;
  const auto shared = unique_words(rng, letters, static_cast<std::size_t>(p.shared_vocab), 3, 7, taken);
  std::vector<std::vector<std::string>> vocab;
  for (int c = 0; c < p.classes; ++c) {
    vocab.push_back(unique_words(rng, letters, static_cast<std::size_t>(p.private_vocab), 3, 7, taken));
  }
  std::vector<std::vector<std::string>> docs(static_cast<std::size_t>(p.classes));
  for (int c = 0; c < p.classes; ++c) {
    for (int i = 0; i < p.docs_per_class; ++i) {
      const auto len = uniform_int(rng, p.min_tokens, p.max_tokens);
      std::string text;
      for (std::int64_t t = 0; t < len; ++t) {
        if (t > 0) text += ' ';
        const bool own = shared.empty() || uniform_unit(rng) < p.private_rate;
        const auto& pool = own ? vocab[static_cast<std::size_t>(c)] : shared;
        text += pool[uniform_index(rng, pool.size())];
      }
      docs[static_cast<std::size_t>(c)].push_back(std::move(text));
    }
  }
  return split(docs, class_names(p.classes));
}

Splits generate_affix_signal(int classes, int docs_per_class, std::uint64_t seed) {
  if (classes < 2 || docs_per_class < 10) {
    throw Error(ErrorCode::InvalidArgument, "synthetic: need at least 2 classes and 10 documents per class");
  }
  static const std::array<std::string_view, 7> prefixes{"وال", "بال", "كال", "فال", "لل", "ال", "و"};
  static const std::array<std::string_view, 13> suffixes{"هما", "كما", "تين", "تان", "ات", "ون", "ين",
                                                         "ان",  "ها",  "ته",  "ه",   "ي",  "ا"};
  static const std::array<std::string_view, 8> marks{"!", "?", "؟", "،", "؛", ".", ":", "…"};
  // Letters that never start or end an affix and are not folded by normalization.
  std::vector<char32_t> stem_letters;
  for (char32_t c : std::u32string(U"ثجحخدذرزسشصضطظعغق")) stem_letters.push_back(c);

  Rng rng(seed);
  std::set<std::string> taken;
  const auto stems = unique_words(rng, stem_letters, 300, 3, 5, taken);
  std::vector<std::vector<std::string>> docs(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    const auto prefix = prefixes[static_cast<std::size_t>(c) % prefixes.size()];
    const auto suffix = suffixes[static_cast<std::size_t>(c) % suffixes.size()];
    const auto mark = marks[static_cast<std::size_t>(c) % marks.size()];
    for (int i = 0; i < docs_per_class; ++i) {
      const auto len = uniform_int(rng, 4, 10);
      std::string text;
      for (std::int64_t t = 0; t < len; ++t) {
        if (t > 0) text += ' ';
        std::string word(stems[uniform_index(rng, stems.size())]);
        const auto r = uniform_index(rng, 3);
        if (r == 0) word = std::string(prefix) + word;
        else if (r == 1) word += suffix;
        else word = std::string(prefix) + word + std::string(suffix);
        text += word;
      }
      text += ' ';
      text += mark;
      docs[static_cast<std::size_t>(c)].push_back(std::move(text));
    }
  }
  return split(docs, class_names(classes));
}

}  // namespace adi::synthetic
