#pragma once

#include <string_view>

namespace adi::resources {

// Bundled default MSA stoplist: one token per line.
std::string_view default_stoplist_text();
// Bundled default lemma lexicon: TSV of (surface, lemma).
std::string_view default_lexicon_text();

}  // namespace adi::resources
