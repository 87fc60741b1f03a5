#include "adi/fasttext.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "adi/error.hpp"
#include "adi/random.hpp"
#include "adi/unicode.hpp"

namespace adi::fasttext {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// Input rows of one example with their weights in the mean-of-means hidden
// vector; repeated rows are merged.
using WeightedRows = std::vector<std::pair<std::uint32_t, double>>;

WeightedRows weighted_rows(const SubwordEmbedding& emb, std::string_view text) {
  std::map<std::uint32_t, double> acc;
  std::vector<std::vector<std::uint32_t>> words;
  for (const auto& tok : unicode::split_whitespace(text)) {
    auto rows = emb.rows_for(tok);
    if (!rows.empty()) words.push_back(std::move(rows));
  }
  for (const auto& rows : words) {
    const double w = 1.0 / (static_cast<double>(words.size()) * static_cast<double>(rows.size()));
    for (auto r : rows) acc[r] += w;
  }
  return WeightedRows(acc.begin(), acc.end());
}

void compute_hidden(const InputMatrix& m, const WeightedRows& rows, std::span<double> hidden,
                    std::span<double> scratch) {
  std::fill(hidden.begin(), hidden.end(), 0.0);
  for (const auto& [r, w] : rows) {
    m.read_row(r, scratch);
    axpy(w, scratch, hidden);
  }
}

}  // namespace

void FastTextParams::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, "fasttext: " + what); };
  if (dim <= 0) bad("dim must be positive");
  if (window <= 0) bad("window must be positive");
  if (epochs < 0) bad("epochs must be non-negative");
  if (min_count <= 0) bad("min_count must be positive");
  if (subwords_enabled() && subword_min <= 0) bad("subword_min must be positive");
  if (bucket_count == 0) bad("bucket_count must be positive");
  if (negatives <= 0) bad("negatives must be positive");
  if (!(learning_rate > 0.0)) bad("learning_rate must be positive");
}

std::uint32_t fnv1a32(std::string_view bytes) {
  std::uint32_t h = 2166136261u;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 16777619u;
  }
  return h;
}

std::vector<std::string> subword_grams(std::string_view word, const FastTextParams& params) {
  std::vector<std::string> out;
  if (!params.subwords_enabled() || word.empty()) return out;
  std::u32string w = U"<" + unicode::decode(word) + U">";
  for (int k = params.subword_min; k <= params.subword_max; ++k) {
    const auto len = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i + len <= w.size(); ++i) out.push_back(unicode::encode(std::u32string_view(w).substr(i, len)));
  }
  return out;
}

std::vector<std::uint32_t> subword_ids(std::string_view word, const FastTextParams& params, std::size_t vocab_size) {
  std::vector<std::uint32_t> ids;
  for (const auto& g : subword_grams(word, params)) {
    ids.push_back(static_cast<std::uint32_t>(vocab_size + fnv1a32(g) % params.bucket_count));
  }
  return ids;
}

// ---------------------------------------------------------------- Vocabulary

Vocabulary Vocabulary::build(std::span<const std::string> texts, int min_count) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& t : texts) {
    for (auto& tok : unicode::split_whitespace(t)) ++counts[std::move(tok)];
  }
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [w, c] : counts) {
    if (c >= static_cast<std::uint64_t>(min_count)) kept.emplace_back(w, c);
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.second != b.second ? a.second > b.second : a.first < b.first; });
  Vocabulary v;
  for (auto& [w, c] : kept) {
    v.index_.emplace(w, static_cast<std::uint32_t>(v.words_.size()));
    v.words_.push_back(w);
    v.counts_.push_back(c);
  }
  return v;
}

std::int64_t Vocabulary::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

void Vocabulary::save(io::BinaryWriter& w) const {
  w.u64(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    w.str(words_[i]);
    w.u64(counts_[i]);
  }
}

Vocabulary Vocabulary::load(io::BinaryReader& r) {
  Vocabulary v;
  const std::uint64_t n = r.count(16);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string word = r.str();
    v.counts_.push_back(r.u64());
    v.index_.emplace(word, static_cast<std::uint32_t>(i));
    v.words_.push_back(std::move(word));
  }
  return v;
}

// --------------------------------------------------------------- InputMatrix

InputMatrix::InputMatrix(std::size_t rows, int dim, std::uint64_t seed) : rows_(rows), dim_(dim), seed_(seed) {}

void InputMatrix::initial_row(std::uint32_t id, std::span<double> out) const {
  std::uint64_t state = seed_ ^ (0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(id) + 1));
  const double bound = 1.0 / static_cast<double>(dim_);
  for (auto& x : out) {
    const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    x = (2.0 * u - 1.0) * bound;
  }
}

void InputMatrix::read_row(std::uint32_t id, std::span<double> out) const {
  auto it = slot_.find(id);
  if (it == slot_.end()) {
    initial_row(id, out);
    return;
  }
  const double* src = data_.data() + static_cast<std::size_t>(it->second) * dim_;
  std::copy(src, src + dim_, out.begin());
}

std::span<double> InputMatrix::row_mut(std::uint32_t id) {
  auto it = slot_.find(id);
  if (it == slot_.end()) {
    const auto slot = static_cast<std::uint32_t>(ids_.size());
    ids_.push_back(id);
    data_.resize(data_.size() + static_cast<std::size_t>(dim_));
    initial_row(id, std::span<double>(data_).subspan(static_cast<std::size_t>(slot) * dim_, dim_));
    it = slot_.emplace(id, slot).first;
  }
  return std::span<double>(data_).subspan(static_cast<std::size_t>(it->second) * dim_, dim_);
}

void InputMatrix::save(io::BinaryWriter& w) const {
  w.u64(rows_);
  w.u32(static_cast<std::uint32_t>(dim_));
  w.u64(seed_);
  std::vector<std::uint32_t> sorted = ids_;
  std::sort(sorted.begin(), sorted.end());
  w.u64(sorted.size());
  for (auto id : sorted) {
    w.u32(id);
    const double* src = data_.data() + static_cast<std::size_t>(slot_.at(id)) * dim_;
    for (int k = 0; k < dim_; ++k) w.f64(src[k]);
  }
}

InputMatrix InputMatrix::load(io::BinaryReader& r) {
  InputMatrix m;
  m.rows_ = r.u64();
  const std::size_t dim_at = r.offset();
  m.dim_ = static_cast<int>(r.u32());
  if (m.dim_ <= 0) throw Error(ErrorCode::CorruptFile, "invalid embedding dimension", static_cast<std::int64_t>(dim_at));
  m.seed_ = r.u64();
  const std::uint64_t n = r.count(4 + 8 * static_cast<std::size_t>(m.dim_));
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::size_t at = r.offset();
    const std::uint32_t id = r.u32();
    if (id >= m.rows_ || m.slot_.count(id)) {
      throw Error(ErrorCode::CorruptFile, "invalid embedding row id", static_cast<std::int64_t>(at));
    }
    auto row = m.row_mut(id);
    for (auto& x : row) x = r.f64();
  }
  return m;
}

bool InputMatrix::operator==(const InputMatrix& other) const {
  if (rows_ != other.rows_ || dim_ != other.dim_ || seed_ != other.seed_ || ids_.size() != other.ids_.size()) {
    return false;
  }
  for (auto [id, slot] : slot_) {
    auto it = other.slot_.find(id);
    if (it == other.slot_.end()) return false;
    if (!std::equal(data_.begin() + static_cast<std::ptrdiff_t>(slot) * dim_,
                    data_.begin() + static_cast<std::ptrdiff_t>(slot + 1) * dim_,
                    other.data_.begin() + static_cast<std::ptrdiff_t>(it->second) * dim_)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------- SubwordEmbedding

SubwordEmbedding::SubwordEmbedding(FastTextParams params, Vocabulary vocab)
    : params_(params),
      vocab_(std::move(vocab)),
      matrix_(vocab_.size() + params.bucket_count, params.dim, params.seed) {}

std::vector<std::uint32_t> SubwordEmbedding::rows_for(std::string_view word) const {
  std::vector<std::uint32_t> rows;
  if (const auto idx = vocab_.find(word); idx >= 0) rows.push_back(static_cast<std::uint32_t>(idx));
  auto sub = subword_ids(word, params_, vocab_.size());
  rows.insert(rows.end(), sub.begin(), sub.end());
  return rows;
}

bool SubwordEmbedding::word_vector(std::string_view word, std::span<double> out) const {
  const auto rows = rows_for(word);
  std::fill(out.begin(), out.end(), 0.0);
  if (rows.empty()) return false;
  std::vector<double> scratch(static_cast<std::size_t>(dim()));
  for (auto r : rows) {
    matrix_.read_row(r, scratch);
    axpy(1.0, scratch, out);
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (auto& x : out) x *= inv;
  return true;
}

DenseVector SubwordEmbedding::sentence_vector(std::string_view text) const {
  DenseVector sum(static_cast<std::size_t>(dim()), 0.0);
  DenseVector word(static_cast<std::size_t>(dim()));
  std::size_t used = 0;
  for (const auto& tok : unicode::split_whitespace(text)) {
    if (!word_vector(tok, word)) continue;
    axpy(1.0, word, sum);
    ++used;
  }
  if (used > 0) {
    const double inv = 1.0 / static_cast<double>(used);
    for (auto& x : sum) x *= inv;
  }
  return sum;
}

void SubwordEmbedding::save(io::BinaryWriter& w) const {
  w.u32(static_cast<std::uint32_t>(params_.dim));
  w.u32(static_cast<std::uint32_t>(params_.window));
  w.u32(static_cast<std::uint32_t>(params_.epochs));
  w.u32(static_cast<std::uint32_t>(params_.min_count));
  w.i64(params_.subword_min);
  w.i64(params_.subword_max);
  w.u32(params_.bucket_count);
  w.u32(static_cast<std::uint32_t>(params_.negatives));
  w.f64(params_.learning_rate);
  w.u64(params_.seed);
  vocab_.save(w);
  matrix_.save(w);
}

SubwordEmbedding SubwordEmbedding::load(io::BinaryReader& r) {
  SubwordEmbedding e;
  const std::size_t at = r.offset();
  e.params_.dim = static_cast<int>(r.u32());
  e.params_.window = static_cast<int>(r.u32());
  e.params_.epochs = static_cast<int>(r.u32());
  e.params_.min_count = static_cast<int>(r.u32());
  e.params_.subword_min = static_cast<int>(r.i64());
  e.params_.subword_max = static_cast<int>(r.i64());
  e.params_.bucket_count = r.u32();
  e.params_.negatives = static_cast<int>(r.u32());
  e.params_.learning_rate = r.f64();
  e.params_.seed = r.u64();
  try {
    e.params_.validate();
  } catch (const Error&) {
    throw Error(ErrorCode::CorruptFile, "invalid embedding parameters", static_cast<std::int64_t>(at));
  }
  e.vocab_ = Vocabulary::load(r);
  const std::size_t m_at = r.offset();
  e.matrix_ = InputMatrix::load(r);
  if (e.matrix_.dim() != e.params_.dim || e.matrix_.rows() != e.vocab_.size() + e.params_.bucket_count) {
    throw Error(ErrorCode::CorruptFile, "embedding matrix shape mismatch", static_cast<std::int64_t>(m_at));
  }
  return e;
}

// ------------------------------------------------------------------ skipgram

namespace {

// Cumulative unigram^0.75 distribution for negative sampling.
class NegativeSampler {
 public:
  explicit NegativeSampler(const std::vector<std::uint64_t>& counts) {
    double total = 0.0;
    for (auto c : counts) {
      total += std::pow(static_cast<double>(c), 0.75);
      cdf_.push_back(total);
    }
    for (auto& x : cdf_) x /= total;
  }

  std::uint32_t draw(Rng& rng) const {
    const double u = uniform_unit(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<std::uint32_t>(it - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

double binary_logistic(std::span<const double> hidden, std::span<double> out_row, bool positive, double lr,
                       std::span<double> grad_hidden) {
  const double z = dot(out_row, hidden);
  const double g = sigmoid(z) - (positive ? 1.0 : 0.0);
  axpy(g, out_row, grad_hidden);
  axpy(-lr * g, hidden, out_row);
  return positive ? softplus(-z) : softplus(z);
}

}  // namespace

EmbeddingModel train_skipgram(std::span<const std::string> texts, const FastTextParams& params,
                              const ProgressFn& progress) {
  params.validate();
  if (texts.empty()) throw Error(ErrorCode::EmptyCorpus, "skipgram: no training texts");
  Vocabulary vocab = Vocabulary::build(texts, params.min_count);
  if (vocab.size() == 0) throw Error(ErrorCode::EmptyVocabulary, "skipgram: no word reaches min_count");

  EmbeddingModel model;
  model.input = SubwordEmbedding(params, vocab);
  const auto dim = static_cast<std::size_t>(params.dim);
  const std::size_t vsize = vocab.size();
  model.output.assign(vsize * dim, 0.0);

  std::vector<std::vector<std::uint32_t>> lines;
  std::size_t total_tokens = 0;
  for (const auto& t : texts) {
    std::vector<std::uint32_t> ids;
    for (const auto& tok : unicode::split_whitespace(t)) {
      if (const auto idx = vocab.find(tok); idx >= 0) ids.push_back(static_cast<std::uint32_t>(idx));
    }
    total_tokens += ids.size();
    lines.push_back(std::move(ids));
  }
  std::vector<std::vector<std::uint32_t>> word_rows(vsize);
  for (std::size_t w = 0; w < vsize; ++w) word_rows[w] = model.input.rows_for(vocab.words()[w]);

  const NegativeSampler sampler(vocab.counts());
  Rng rng(params.seed);
  InputMatrix& matrix = model.input.matrix();
  DenseVector hidden(dim), grad(dim), scratch(dim);
  const double scheduled = static_cast<double>(total_tokens) * params.epochs;
  std::size_t processed = 0;

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    double loss_sum = 0.0;
    std::size_t pairs = 0;
    for (const auto& line : lines) {
      for (std::size_t pos = 0; pos < line.size(); ++pos) {
        const double lr = params.learning_rate * (1.0 - static_cast<double>(processed) / scheduled);
        ++processed;
        const auto& rows = word_rows[line[pos]];
        const double row_weight = 1.0 / static_cast<double>(rows.size());
        const auto boundary = static_cast<std::size_t>(uniform_int(rng, 1, params.window));
        const std::size_t lo = pos >= boundary ? pos - boundary : 0;
        const std::size_t hi = std::min(line.size() - 1, pos + boundary);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          std::fill(hidden.begin(), hidden.end(), 0.0);
          for (auto r : rows) {
            matrix.read_row(r, scratch);
            axpy(row_weight, scratch, hidden);
          }
          std::fill(grad.begin(), grad.end(), 0.0);
          const std::uint32_t target = line[c];
          double loss = binary_logistic(hidden, std::span<double>(model.output).subspan(target * dim, dim), true, lr, grad);
          for (int k = 0; k < params.negatives && vsize > 1; ++k) {
            std::uint32_t neg = sampler.draw(rng);
            while (neg == target) neg = sampler.draw(rng);
            loss += binary_logistic(hidden, std::span<double>(model.output).subspan(neg * dim, dim), false, lr, grad);
          }
          for (auto r : rows) axpy(-lr * row_weight, grad, matrix.row_mut(r));
          loss_sum += loss;
          ++pairs;
        }
      }
    }
    const double mean = pairs ? loss_sum / static_cast<double>(pairs) : 0.0;
    model.epoch_loss.push_back(mean);
    if (progress) progress(epoch + 1, mean);
  }
  return model;
}

void EmbeddingModel::save(io::BinaryWriter& w) const {
  input.save(w);
  w.f64_array(output);
}

EmbeddingModel EmbeddingModel::load(io::BinaryReader& r) {
  EmbeddingModel m;
  m.input = SubwordEmbedding::load(r);
  const std::size_t at = r.offset();
  m.output = r.f64_array();
  if (m.output.size() != m.input.vocab().size() * static_cast<std::size_t>(m.input.dim())) {
    throw Error(ErrorCode::CorruptFile, "output matrix shape mismatch", static_cast<std::int64_t>(at));
  }
  return m;
}

// ---------------------------------------------------------------- supervised

double ova_forward_backward(std::span<const double> hidden, int label, std::span<const double> label_matrix,
                            std::size_t label_count, std::span<double> grad_hidden, std::span<double> label_grad) {
  const std::size_t dim = hidden.size();
  double loss = 0.0;
  for (std::size_t l = 0; l < label_count; ++l) {
    const auto row = label_matrix.subspan(l * dim, dim);
    const double z = dot(row, hidden);
    const bool positive = static_cast<int>(l) == label;
    loss += positive ? softplus(-z) : softplus(z);
    const double g = sigmoid(z) - (positive ? 1.0 : 0.0);
    axpy(g, row, grad_hidden);
    if (!label_grad.empty()) axpy(g, hidden, label_grad.subspan(l * dim, dim));
  }
  return loss;
}

std::vector<double> SupervisedTextModel::scores(std::string_view text) const {
  const DenseVector h = sentence_vector(text);
  const auto dim = h.size();
  std::vector<double> out(label_count);
  for (std::size_t l = 0; l < label_count; ++l) {
    out[l] = sigmoid(dot(std::span<const double>(label_matrix).subspan(l * dim, dim), h));
  }
  return out;
}

int SupervisedTextModel::predict(std::string_view text) const {
  const auto s = scores(text);
  return static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin());
}

SupervisedTextModel train_supervised(std::span<const std::string> texts, std::span<const int> labels,
                                     const FastTextParams& params, const ProgressFn& progress) {
  params.validate();
  if (texts.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "supervised: texts and labels differ in length");
  if (texts.empty()) throw Error(ErrorCode::EmptyCorpus, "supervised: no training texts");
  for (int y : labels) {
    if (y < 0) throw Error(ErrorCode::IndexOutOfRange, "supervised: negative label index");
  }
  const int max_label = *std::max_element(labels.begin(), labels.end());
  const int min_label = *std::min_element(labels.begin(), labels.end());
  if (max_label == min_label) throw Error(ErrorCode::SingleClass, "supervised: need at least two distinct labels");

  Vocabulary vocab = Vocabulary::build(texts, params.min_count);
  SupervisedTextModel model;
  model.input = SubwordEmbedding(params, std::move(vocab));
  model.label_count = static_cast<std::size_t>(max_label) + 1;
  const auto dim = static_cast<std::size_t>(params.dim);
  model.label_matrix.assign(model.label_count * dim, 0.0);

  std::vector<WeightedRows> examples;
  examples.reserve(texts.size());
  for (const auto& t : texts) examples.push_back(weighted_rows(model.input, t));

  std::vector<std::size_t> order(texts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(params.seed);
  InputMatrix& matrix = model.input.matrix();
  DenseVector hidden(dim), grad(dim), scratch(dim);
  std::vector<double> label_grad(model.label_matrix.size());
  const double scheduled = static_cast<double>(texts.size()) * params.epochs;
  std::size_t processed = 0;

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    shuffle(order, rng);
    double loss_sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i : order) {
      const double lr = params.learning_rate * (1.0 - static_cast<double>(processed) / scheduled);
      ++processed;
      const auto& rows = examples[i];
      if (rows.empty()) continue;
      compute_hidden(matrix, rows, hidden, scratch);
      std::fill(grad.begin(), grad.end(), 0.0);
      std::fill(label_grad.begin(), label_grad.end(), 0.0);
      loss_sum += ova_forward_backward(hidden, labels[i], model.label_matrix, model.label_count, grad, label_grad);
      ++used;
      axpy(-lr, label_grad, model.label_matrix);
      for (const auto& [r, w] : rows) axpy(-lr * w, grad, matrix.row_mut(r));
    }
    const double mean = used ? loss_sum / static_cast<double>(used) : 0.0;
    model.epoch_loss.push_back(mean);
    if (progress) progress(epoch + 1, mean);
  }
  return model;
}

double ova_batch_loss(const SupervisedTextModel& model, std::span<const std::string> texts, std::span<const int> labels) {
  const auto dim = static_cast<std::size_t>(model.input.dim());
  DenseVector hidden(dim), grad(dim), scratch(dim);
  double loss = 0.0;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto rows = weighted_rows(model.input, texts[i]);
    if (rows.empty()) continue;
    compute_hidden(model.input.matrix(), rows, hidden, scratch);
    loss += ova_forward_backward(hidden, labels[i], model.label_matrix, model.label_count, grad, {});
  }
  return loss;
}

OvaGradient ova_batch_gradient(const SupervisedTextModel& model, std::span<const std::string> texts,
                               std::span<const int> labels) {
  const auto dim = static_cast<std::size_t>(model.input.dim());
  OvaGradient out;
  out.label_grad.assign(model.label_matrix.size(), 0.0);
  DenseVector hidden(dim), grad(dim), scratch(dim);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto rows = weighted_rows(model.input, texts[i]);
    if (rows.empty()) continue;
    compute_hidden(model.input.matrix(), rows, hidden, scratch);
    std::fill(grad.begin(), grad.end(), 0.0);
    out.loss += ova_forward_backward(hidden, labels[i], model.label_matrix, model.label_count, grad, out.label_grad);
    for (const auto& [r, w] : rows) {
      auto& g = out.input_grad[r];
      if (g.empty()) g.assign(dim, 0.0);
      axpy(w, grad, g);
    }
  }
  return out;
}

void SupervisedTextModel::save(io::BinaryWriter& w) const {
  input.save(w);
  w.u64(label_count);
  w.f64_array(label_matrix);
}

SupervisedTextModel SupervisedTextModel::load(io::BinaryReader& r) {
  SupervisedTextModel m;
  m.input = SubwordEmbedding::load(r);
  m.label_count = r.u64();
  const std::size_t at = r.offset();
  m.label_matrix = r.f64_array();
  if (m.label_matrix.size() != m.label_count * static_cast<std::size_t>(m.input.dim())) {
    throw Error(ErrorCode::CorruptFile, "label matrix shape mismatch", static_cast<std::int64_t>(at));
  }
  return m;
}

}  // namespace adi::fasttext
