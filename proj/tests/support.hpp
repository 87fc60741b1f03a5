#pragma once

#include <string>
#include <vector>

#include "adi/random.hpp"
#include "adi/unicode.hpp"

namespace testing {

// Random text over a mix of Arabic letters, diacritics, tatweel, Latin,
// digits, punctuation, emoji and several whitespace kinds.
inline std::string fuzz_text(adi::Rng& rng, int max_len = 24) {
  static const std::u32string pool =
      U"ابتثجحخدذرزسشصضطظعغفقكلمنهويءآأإؤئىةٱ"
      U"ًٌٍَُِّْٰـ"
      U"abcxyzABZ0129٠١٩"
      U"!?.,;:\"'()-_#@؟،؛«»…"
      U"\U0001F600\U0001F44D❤️‍"
      U"éüß中"
      U"   \t  　";
  const auto len = adi::uniform_int(rng, 0, max_len);
  std::string out;
  for (std::int64_t i = 0; i < len; ++i) adi::unicode::append_utf8(out, pool[adi::uniform_index(rng, pool.size())]);
  return out;
}

// Space-separated words drawn from a small alphabet, so corpora share terms.
inline std::string fuzz_words(adi::Rng& rng, const std::u32string& alphabet, int max_tokens, int max_word = 4) {
  const auto tokens = adi::uniform_int(rng, 0, max_tokens);
  std::string out;
  for (std::int64_t t = 0; t < tokens; ++t) {
    if (t) out += ' ';
    const auto len = adi::uniform_int(rng, 1, max_word);
    for (std::int64_t i = 0; i < len; ++i) {
      adi::unicode::append_utf8(out, alphabet[adi::uniform_index(rng, alphabet.size())]);
    }
  }
  return out;
}

}  // namespace testing
