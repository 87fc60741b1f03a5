#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adi/corpus.hpp"

// Seeded synthetic dialect-like corpora for tests and demos.
namespace adi::synthetic {

struct SyntheticParams {
  int classes = 18;
  int docs_per_class = 100;
  int private_vocab = 40;
  int shared_vocab = 200;
  int min_tokens = 5;
  int max_tokens = 30;
  // Probability that a token comes from the class-private vocabulary.
  double private_rate = 0.7;
  std::uint64_t seed = 7;
};

struct Splits {
  corpus::Corpus train;
  corpus::Corpus dev;
  corpus::Corpus test;
};

// Country-style class names; at most 18 are named, further classes get "class_<i>".
std::vector<std::string> class_names(int classes);

// Random-letter words; each class draws mostly from its own vocabulary.
// Split per class 80/10/10 into train/dev/test.
Splits generate(const SyntheticParams& params);

// Corpus whose only class signal is a per-class clitic prefix, suffix and a
// punctuation mark. Aggressive preprocessing erases it.
Splits generate_affix_signal(int classes, int docs_per_class, std::uint64_t seed);

}  // namespace adi::synthetic
