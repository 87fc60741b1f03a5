#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adi/serialize.hpp"
#include "adi/sparse.hpp"

// Subword-hashing embeddings: unsupervised skipgram with negative sampling
// and a supervised one-vs-all text classifier sharing the same input layer.
namespace adi::fasttext {

struct FastTextParams {
  int dim = 50;
  int window = 5;
  int epochs = 5;
  int min_count = 1;
  // Character n-gram range over "<word>". subword_min > subword_max
  // disables subwords.
  int subword_min = 2;
  int subword_max = 5;
  std::uint32_t bucket_count = 2'000'000;
  int negatives = 5;
  double learning_rate = 0.05;
  std::uint64_t seed = 0;

  void validate() const;
  bool subwords_enabled() const { return subword_min <= subword_max; }
  bool operator==(const FastTextParams&) const = default;
};

// (epoch, mean loss) after each epoch.
using ProgressFn = std::function<void(int epoch, double mean_loss)>;

std::uint32_t fnv1a32(std::string_view bytes);

// Character grams of "<word>" for k in [minn, maxn], k ascending.
std::vector<std::string> subword_grams(std::string_view word, const FastTextParams& params);
// Row ids of the subword grams: vocab_size + fnv1a32(gram) % bucket_count.
std::vector<std::uint32_t> subword_ids(std::string_view word, const FastTextParams& params, std::size_t vocab_size);

class Vocabulary {
 public:
  Vocabulary() = default;
  // Keeps words with count >= min_count, ordered by count desc, then word.
  static Vocabulary build(std::span<const std::string> texts, int min_count);

  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  // -1 when absent.
  std::int64_t find(std::string_view word) const;

  void save(io::BinaryWriter& w) const;
  static Vocabulary load(io::BinaryReader& r);

 private:
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// (vocab + bucket) x dim input matrix. Rows are materialized on first write;
// an unmaterialized row reads as its deterministic seeded initial value
// uniform(-1/dim, 1/dim), so a two-million-bucket table costs memory only
// for the rows training actually touches.
class InputMatrix {
 public:
  InputMatrix() = default;
  InputMatrix(std::size_t rows, int dim, std::uint64_t seed);

  std::size_t rows() const { return rows_; }
  int dim() const { return dim_; }
  std::size_t materialized() const { return ids_.size(); }

  void initial_row(std::uint32_t id, std::span<double> out) const;
  void read_row(std::uint32_t id, std::span<double> out) const;
  std::span<double> row_mut(std::uint32_t id);

  void save(io::BinaryWriter& w) const;
  static InputMatrix load(io::BinaryReader& r);

  bool operator==(const InputMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  int dim_ = 0;
  std::uint64_t seed_ = 0;
  std::unordered_map<std::uint32_t, std::uint32_t> slot_;
  std::vector<std::uint32_t> ids_;
  std::vector<double> data_;
};

// Word vocabulary plus the hashed input layer shared by both training modes.
class SubwordEmbedding {
 public:
  SubwordEmbedding() = default;
  SubwordEmbedding(FastTextParams params, Vocabulary vocab);

  const FastTextParams& params() const { return params_; }
  const Vocabulary& vocab() const { return vocab_; }
  InputMatrix& matrix() { return matrix_; }
  const InputMatrix& matrix() const { return matrix_; }
  int dim() const { return params_.dim; }

  // Word row (when in vocabulary) followed by its subword rows.
  std::vector<std::uint32_t> rows_for(std::string_view word) const;
  // Mean of rows_for(word); false when the word has no rows.
  bool word_vector(std::string_view word, std::span<double> out) const;
  // Mean of the word vectors; zero vector when no word has rows.
  DenseVector sentence_vector(std::string_view text) const;

  void save(io::BinaryWriter& w) const;
  static SubwordEmbedding load(io::BinaryReader& r);

  bool operator==(const SubwordEmbedding& o) const {
    return params_ == o.params_ && vocab_.words() == o.vocab_.words() && vocab_.counts() == o.vocab_.counts() &&
           matrix_ == o.matrix_;
  }

 private:
  FastTextParams params_;
  Vocabulary vocab_;
  InputMatrix matrix_;
};

struct EmbeddingModel {
  SubwordEmbedding input;
  std::vector<double> output;  // |vocab| x dim context vectors
  std::vector<double> epoch_loss;

  DenseVector sentence_vector(std::string_view text) const { return input.sentence_vector(text); }

  void save(io::BinaryWriter& w) const;
  static EmbeddingModel load(io::BinaryReader& r);
};

struct SupervisedTextModel {
  SubwordEmbedding input;
  std::size_t label_count = 0;
  std::vector<double> label_matrix;  // label_count x dim, one logistic output per label
  std::vector<double> epoch_loss;

  DenseVector sentence_vector(std::string_view text) const { return input.sentence_vector(text); }
  // Per-label sigmoid scores.
  std::vector<double> scores(std::string_view text) const;
  // argmax of scores; ties go to the lowest label index.
  int predict(std::string_view text) const;

  void save(io::BinaryWriter& w) const;
  static SupervisedTextModel load(io::BinaryReader& r);
};

// Throws EmptyCorpus / EmptyVocabulary.
EmbeddingModel train_skipgram(std::span<const std::string> texts, const FastTextParams& params,
                              const ProgressFn& progress = {});

// labels in [0, label_count) with label_count = max label + 1; throws
// LengthMismatch, SingleClass.
SupervisedTextModel train_supervised(std::span<const std::string> texts, std::span<const int> labels,
                                     const FastTextParams& params, const ProgressFn& progress = {});

template <typename Model>
std::vector<DenseVector> extract_features(const Model& model, std::span<const std::string> texts) {
  std::vector<DenseVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(model.sentence_vector(t));
  return out;
}

// One-vs-all logistic loss of one hidden vector:
//   sum_l softplus(-z_l) if l == label else softplus(z_l),  z_l = o_l . h
// Adds dL/dh to grad_hidden and dL/dO to label_grad (may be empty).
double ova_forward_backward(std::span<const double> hidden, int label, std::span<const double> label_matrix,
                            std::size_t label_count, std::span<double> grad_hidden, std::span<double> label_grad);

// Summed OVA loss over a batch, and its analytic gradient with respect to
// the label matrix and every input row the batch touches.
struct OvaGradient {
  double loss = 0.0;
  std::vector<double> label_grad;
  std::unordered_map<std::uint32_t, DenseVector> input_grad;
};

double ova_batch_loss(const SupervisedTextModel& model, std::span<const std::string> texts,
                      std::span<const int> labels);
OvaGradient ova_batch_gradient(const SupervisedTextModel& model, std::span<const std::string> texts,
                               std::span<const int> labels);

}  // namespace adi::fasttext
