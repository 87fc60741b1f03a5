#include "adi/config.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <set>

#include "json.hpp"

#include "adi/error.hpp"
#include "adi/serialize.hpp"

namespace adi::harness {

using nlohmann::json;
using pipeline::FeatureSource;

std::string_view to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::Exp1: return "exp1";
    case ExperimentId::Exp2: return "exp2";
    case ExperimentId::Exp3: return "exp3";
    case ExperimentId::Exp4: return "exp4";
  }
  return "exp4";
}

ExperimentId parse_experiment_id(std::string_view name) {
  for (auto id : {ExperimentId::Exp1, ExperimentId::Exp2, ExperimentId::Exp3, ExperimentId::Exp4}) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorCode::InvalidValue, "id: unknown experiment '" + std::string(name) + "'");
}

std::vector<NgramPair> ngram_pairs(int m_lo, int m_hi, int n_lo, int n_hi) {
  std::vector<NgramPair> out;
  for (int m = m_lo; m <= m_hi; ++m) {
    for (int n = std::max(n_lo, m); n <= n_hi; ++n) out.push_back({m, n});
  }
  return out;
}

ExperimentSpec preset(ExperimentId id, bool full_grid) {
  ExperimentSpec s;
  s.id = id;
  s.runs = 3;
  s.seed = 7;
  s.svc.C = 100.0;
  s.analyzer_ngrams = {NgramPair{1, 2}, std::nullopt, std::nullopt};
  s.ngram_grid = full_grid ? ngram_pairs() : std::vector<NgramPair>{{1, 3}, {2, 5}};
  s.max_features_grid = full_grid ? std::vector<std::optional<std::size_t>>{1000, 5000, 10000, 25000}
                                  : std::vector<std::optional<std::size_t>>{25000};
  s.fasttext.window = 6;
  s.fasttext.epochs = full_grid ? 100 : 10;
  s.fasttext.dim = full_grid ? 1000 : 50;
  s.fasttext.bucket_count = full_grid ? 2'000'000 : 200'000;
  switch (id) {
    case ExperimentId::Exp1:
      s.surface = std::nullopt;
      break;
    case ExperimentId::Exp2:
      s.morph = std::nullopt;
      break;
    case ExperimentId::Exp3:
      s.feature_sources = {FeatureSource::FastTextSupervised, FeatureSource::FastTextUnsupervised};
      break;
    case ExperimentId::Exp4:
      s.ngram_grid = ngram_pairs();
      if (full_grid) {
        s.weight_grid.clear();
        const double values[] = {0.5, 0.75, 1.0};
        for (double a : values)
          for (double b : values)
            for (double c : values) s.weight_grid.push_back({a, b, c});
      } else {
        s.weight_grid = {{1.0, 1.0, 1.0}, {0.5, 1.0, 1.0}, {1.0, 0.5, 1.0}};
      }
      break;
  }
  return s;
}

namespace {

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::InvalidValue, key + ": " + why);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) {
      const std::string name = where.empty() ? it.key() : where + "." + it.key();
      throw Error(ErrorCode::UnknownKey, "unknown key '" + name + "'");
    }
  }
}

const json& require_object(const json& j, const std::string& key) {
  if (!j.is_object()) invalid(key, "expected an object");
  return j;
}

long long get_int(const json& j, const std::string& key, long long lo, long long hi) {
  if (!j.is_number_integer()) invalid(key, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi) invalid(key, "value " + std::to_string(v) + " out of range");
  return v;
}

double get_positive(const json& j, const std::string& key) {
  if (!j.is_number()) invalid(key, "expected a number");
  const double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) invalid(key, "must be a positive number");
  return v;
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) invalid(key, "expected a boolean");
  return j.get<bool>();
}

NgramPair get_pair(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) invalid(key, "expected [m, n]");
  NgramPair p{static_cast<int>(get_int(j[0], key, 1, 64)), static_cast<int>(get_int(j[1], key, 1, 64))};
  if (p.min > p.max) invalid(key, "ngram range requires m <= n");
  return p;
}

surface::SurfaceConfig parse_surface_object(const json& j, const std::string& key) {
  require_object(j, key);
  check_keys(j, key, {"normalize_letters", "remove_punct_emoji", "remove_stopwords", "remove_diacritics", "remove_non_arabic"});
  surface::SurfaceConfig c;
  if (j.contains("normalize_letters")) c.normalize_letters = get_bool(j["normalize_letters"], key + ".normalize_letters");
  if (j.contains("remove_punct_emoji")) c.remove_punct_emoji = get_bool(j["remove_punct_emoji"], key + ".remove_punct_emoji");
  if (j.contains("remove_stopwords")) c.remove_stopwords = get_bool(j["remove_stopwords"], key + ".remove_stopwords");
  if (j.contains("remove_diacritics")) c.remove_diacritics = get_bool(j["remove_diacritics"], key + ".remove_diacritics");
  if (j.contains("remove_non_arabic")) c.remove_non_arabic = get_bool(j["remove_non_arabic"], key + ".remove_non_arabic");
  return c;
}

void parse_svc(const json& j, svc::SvcParams& p, std::vector<std::string>& warnings, bool allow_gamma) {
  require_object(j, "svc");
  if (allow_gamma) check_keys(j, "svc", {"C", "tolerance", "max_sweeps", "seed", "gamma"});
  else check_keys(j, "svc", {"C", "tolerance", "max_sweeps", "seed"});
  if (j.contains("C")) p.C = get_positive(j["C"], "svc.C");
  if (j.contains("tolerance")) p.tolerance = get_positive(j["tolerance"], "svc.tolerance");
  if (j.contains("max_sweeps")) p.max_sweeps = static_cast<int>(get_int(j["max_sweeps"], "svc.max_sweeps", 1, 1'000'000'000));
  if (j.contains("seed")) p.seed = static_cast<std::uint64_t>(get_int(j["seed"], "svc.seed", 0, INT64_MAX));
  if (allow_gamma && j.contains("gamma")) {
    if (!j["gamma"].is_number() && !j["gamma"].is_array()) invalid("svc.gamma", "expected a number or list");
    warnings.push_back("svc.gamma is ignored: the classifier is linear and has no kernel width");
  }
}

void parse_fasttext(const json& j, fasttext::FastTextParams& p) {
  require_object(j, "fasttext");
  check_keys(j, "fasttext", {"dim", "ws", "epochs", "min_count", "minn", "maxn", "bucket", "neg", "lr", "seed"});
  if (j.contains("dim")) p.dim = static_cast<int>(get_int(j["dim"], "fasttext.dim", 1, 100000));
  if (j.contains("ws")) p.window = static_cast<int>(get_int(j["ws"], "fasttext.ws", 1, 1000));
  if (j.contains("epochs")) p.epochs = static_cast<int>(get_int(j["epochs"], "fasttext.epochs", 0, 100000));
  if (j.contains("min_count")) p.min_count = static_cast<int>(get_int(j["min_count"], "fasttext.min_count", 1, INT32_MAX));
  if (j.contains("minn")) p.subword_min = static_cast<int>(get_int(j["minn"], "fasttext.minn", 0, 64));
  if (j.contains("maxn")) p.subword_max = static_cast<int>(get_int(j["maxn"], "fasttext.maxn", 0, 64));
  if (j.contains("bucket")) p.bucket_count = static_cast<std::uint32_t>(get_int(j["bucket"], "fasttext.bucket", 1, UINT32_MAX));
  if (j.contains("neg")) p.negatives = static_cast<int>(get_int(j["neg"], "fasttext.neg", 1, 1000));
  if (j.contains("lr")) p.learning_rate = get_positive(j["lr"], "fasttext.lr");
  if (j.contains("seed")) p.seed = static_cast<std::uint64_t>(get_int(j["seed"], "fasttext.seed", 0, INT64_MAX));
  if (p.subwords_enabled() && p.subword_min == 0) invalid("fasttext.minn", "must be positive when subwords are enabled");
}

tfidf::Weights get_weights(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) invalid(key, "expected [w1, w2, w3]");
  tfidf::Weights w{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) invalid(key, "expected numbers");
    w[i] = j[i].get<double>();
    if (!(w[i] > 0.0 && w[i] <= 1.0)) invalid(key, "weights must lie in (0, 1]");
  }
  return w;
}

std::optional<std::size_t> get_max_features(const json& j, const std::string& key) {
  if (j.is_null()) return std::nullopt;
  return static_cast<std::size_t>(get_int(j, key, 1, INT64_MAX));
}

}  // namespace

void validate_spec(const ExperimentSpec& s) {
  auto violation = [&](const std::string& what) {
    throw Error(ErrorCode::SchemaViolation, std::string(to_string(s.id)) + ": " + what);
  };
  const bool tfidf_only = s.feature_sources.size() == 1 && s.feature_sources[0] == FeatureSource::TfidfUnion;
  const bool unit_weights = s.weight_grid.size() == 1 && s.weight_grid[0] == tfidf::Weights{1.0, 1.0, 1.0};
  const bool no_surface = s.surface && !s.surface->any();
  const bool no_morph = s.morph && s.morph->mode == morph::MorphMode::None;
  if (s.runs < 1) violation("runs must be positive");
  if (s.feature_sources.empty()) violation("feature_source must not be empty");
  switch (s.id) {
    case ExperimentId::Exp1:
      if (s.surface) violation("surface must enumerate all configurations (\"all\")");
      if (!no_morph) violation("morph must be \"none\"");
      if (!tfidf_only) violation("feature_source must be tfidf_union");
      if (!unit_weights) violation("weights are fixed to [1, 1, 1]");
      break;
    case ExperimentId::Exp2:
      if (s.morph) violation("morph must enumerate all modes (\"all\")");
      if (!no_surface) violation("surface must be \"none\"");
      if (!tfidf_only) violation("feature_source must be tfidf_union");
      if (!unit_weights) violation("weights are fixed to [1, 1, 1]");
      break;
    case ExperimentId::Exp3:
      for (auto src : s.feature_sources) {
        if (src == FeatureSource::TfidfUnion) violation("feature_source must be fasttext_supervised and/or fasttext_unsupervised");
      }
      if (!no_surface || !no_morph) violation("no preprocessing enumeration");
      break;
    case ExperimentId::Exp4:
      if (!tfidf_only) violation("feature_source must be tfidf_union");
      if (!no_surface || !no_morph) violation("no preprocessing enumeration");
      break;
  }
}

ExperimentSpec parse_config_text(std::string_view json_text, bool full_grid) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw Error(ErrorCode::SchemaViolation, "config root must be an object");
  check_keys(root, "", {"id", "runs", "seed", "surface", "morph", "feature_source", "analyzers", "ngram_grid",
                        "max_features", "weights", "svc", "fasttext"});
  if (!root.contains("id")) throw Error(ErrorCode::SchemaViolation, "config requires an \"id\"");
  if (!root["id"].is_string()) invalid("id", "expected a string");
  ExperimentSpec s = preset(parse_experiment_id(root["id"].get<std::string>()), full_grid);

  if (root.contains("runs")) s.runs = static_cast<int>(get_int(root["runs"], "runs", 1, 1000));
  if (root.contains("seed")) s.seed = static_cast<std::uint64_t>(get_int(root["seed"], "seed", 0, INT64_MAX));

  if (root.contains("surface")) {
    const json& j = root["surface"];
    if (j.is_string()) {
      const auto v = j.get<std::string>();
      if (v == "all") s.surface = std::nullopt;
      else if (v == "none") s.surface = surface::SurfaceConfig{};
      else invalid("surface", "expected \"none\", \"all\" or an object of flags");
    } else {
      s.surface = parse_surface_object(j, "surface");
    }
  }
  if (root.contains("morph")) {
    const json& j = root["morph"];
    if (!j.is_string()) invalid("morph", "expected a mode name or \"all\"");
    const auto v = j.get<std::string>();
    if (v == "all") s.morph = std::nullopt;
    else s.morph = morph::MorphConfig{morph::parse_morph_mode(v)};
  }
  if (root.contains("feature_source")) {
    const json& j = root["feature_source"];
    s.feature_sources.clear();
    if (j.is_string()) {
      s.feature_sources.push_back(pipeline::parse_feature_source(j.get<std::string>()));
    } else if (j.is_array() && !j.empty()) {
      for (const auto& e : j) {
        if (!e.is_string()) invalid("feature_source", "expected names");
        s.feature_sources.push_back(pipeline::parse_feature_source(e.get<std::string>()));
      }
    } else {
      invalid("feature_source", "expected a name or a non-empty list of names");
    }
  }
  if (root.contains("analyzers")) {
    const json& j = require_object(root["analyzers"], "analyzers");
    check_keys(j, "analyzers", {"word", "char", "char_wb"});
    const char* names[3] = {"word", "char", "char_wb"};
    for (std::size_t b = 0; b < 3; ++b) {
      if (!j.contains(names[b])) continue;
      const json& a = j[names[b]];
      const std::string key = std::string("analyzers.") + names[b];
      if (a.is_string() && a.get<std::string>() == "grid") s.analyzer_ngrams[b] = std::nullopt;
      else s.analyzer_ngrams[b] = get_pair(a, key);
    }
  }
  if (root.contains("ngram_grid")) {
    const json& j = root["ngram_grid"];
    if (j.is_string() && j.get<std::string>() == "full") {
      s.ngram_grid = ngram_pairs();
    } else if (j.is_object()) {
      check_keys(j, "ngram_grid", {"m", "n"});
      if (!j.contains("m") || !j.contains("n")) invalid("ngram_grid", "requires both \"m\" and \"n\" ranges");
      const NgramPair m = get_pair(j["m"], "ngram_grid.m");
      const NgramPair n = get_pair(j["n"], "ngram_grid.n");
      s.ngram_grid = ngram_pairs(m.min, m.max, n.min, n.max);
    } else if (j.is_array()) {
      s.ngram_grid.clear();
      for (const auto& p : j) s.ngram_grid.push_back(get_pair(p, "ngram_grid"));
    } else {
      invalid("ngram_grid", "expected \"full\", {\"m\": [lo, hi], \"n\": [lo, hi]} or a list of pairs");
    }
  }
  if (root.contains("max_features")) {
    const json& j = root["max_features"];
    s.max_features_grid.clear();
    if (j.is_array()) {
      for (const auto& v : j) s.max_features_grid.push_back(get_max_features(v, "max_features"));
    } else {
      s.max_features_grid.push_back(get_max_features(j, "max_features"));
    }
  }
  if (root.contains("weights")) {
    const json& j = root["weights"];
    s.weight_grid.clear();
    if (j.is_array()) {
      s.weight_grid.push_back(get_weights(j, "weights"));
    } else if (j.is_object()) {
      check_keys(j, "weights", {"values", "triples"});
      if (j.contains("values") == j.contains("triples")) invalid("weights", "give exactly one of \"values\" or \"triples\"");
      if (j.contains("values")) {
        const json& v = j["values"];
        if (!v.is_array() || v.empty()) invalid("weights.values", "expected a non-empty list");
        std::vector<double> values;
        for (const auto& x : v) {
          if (!x.is_number() || !(x.get<double>() > 0.0 && x.get<double>() <= 1.0)) {
            invalid("weights.values", "weights must lie in (0, 1]");
          }
          values.push_back(x.get<double>());
        }
        for (double a : values)
          for (double b : values)
            for (double c : values) s.weight_grid.push_back({a, b, c});
      } else {
        const json& t = j["triples"];
        if (!t.is_array() || t.empty()) invalid("weights.triples", "expected a non-empty list");
        for (const auto& x : t) s.weight_grid.push_back(get_weights(x, "weights.triples"));
      }
    } else {
      invalid("weights", "expected [w1, w2, w3] or {\"values\": [...]} or {\"triples\": [...]}");
    }
  }
  if (root.contains("svc")) parse_svc(root["svc"], s.svc, s.warnings, true);
  if (root.contains("fasttext")) parse_fasttext(root["fasttext"], s.fasttext);

  validate_spec(s);
  return s;
}

ExperimentSpec parse_config(const std::filesystem::path& path, bool full_grid) {
  return parse_config_text(io::read_file(path), full_grid);
}

std::vector<pipeline::PipelineConfig> enumerate_grid(const ExperimentSpec& spec) {
  const auto surfaces = spec.surface ? std::vector<surface::SurfaceConfig>{*spec.surface} : surface::enumerate_surface_configs();
  const auto morphs = spec.morph ? std::vector<morph::MorphConfig>{*spec.morph} : morph::enumerate_morph_configs();
  const bool ngram_dim_active =
      std::any_of(spec.analyzer_ngrams.begin(), spec.analyzer_ngrams.end(), [](const auto& a) { return !a.has_value(); });
  const std::vector<NgramPair> ngrams = ngram_dim_active ? spec.ngram_grid : std::vector<NgramPair>{NgramPair{}};

  std::vector<pipeline::PipelineConfig> out;
  for (const auto& sc : surfaces) {
    for (const auto& mc : morphs) {
      for (auto source : spec.feature_sources) {
        pipeline::PipelineConfig base;
        base.surface = sc;
        base.morph = mc;
        base.source = source;
        base.fasttext = spec.fasttext;
        base.svc = spec.svc;
        if (source != FeatureSource::TfidfUnion) {
          out.push_back(base);
          continue;
        }
        for (const auto& ng : ngrams) {
          for (const auto& mf : spec.max_features_grid) {
            for (const auto& w : spec.weight_grid) {
              pipeline::PipelineConfig c = base;
              for (std::size_t b = 0; b < 3; ++b) {
                const NgramPair range = spec.analyzer_ngrams[b].value_or(ng);
                c.analyzers[b].ngram_min = range.min;
                c.analyzers[b].ngram_max = range.max;
                c.analyzers[b].max_features = mf;
              }
              c.weights = w;
              out.push_back(c);
            }
          }
        }
      }
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptyGrid, std::string(to_string(spec.id)) + ": grid has no points");
  return out;
}

std::string pipeline_config_to_json(const pipeline::PipelineConfig& c) {
  json j;
  j["surface"] = {{"normalize_letters", c.surface.normalize_letters},
                  {"remove_punct_emoji", c.surface.remove_punct_emoji},
                  {"remove_stopwords", c.surface.remove_stopwords},
                  {"remove_diacritics", c.surface.remove_diacritics},
                  {"remove_non_arabic", c.surface.remove_non_arabic}};
  j["morph"] = std::string(morph::to_string(c.morph.mode));
  j["feature_source"] = std::string(pipeline::to_string(c.source));
  json analyzers = json::object();
  for (const auto& a : c.analyzers) {
    json e = {{"ngram", {a.ngram_min, a.ngram_max}}};
    e["max_features"] = a.max_features ? json(*a.max_features) : json(nullptr);
    analyzers[std::string(tfidf::to_string(a.kind))] = e;
  }
  j["analyzers"] = analyzers;
  j["weights"] = {c.weights[0], c.weights[1], c.weights[2]};
  const auto& f = c.fasttext;
  j["fasttext"] = {{"dim", f.dim},       {"ws", f.window},          {"epochs", f.epochs},
                   {"min_count", f.min_count}, {"minn", f.subword_min}, {"maxn", f.subword_max},
                   {"bucket", f.bucket_count}, {"neg", f.negatives},    {"lr", f.learning_rate},
                   {"seed", f.seed}};
  j["svc"] = {{"C", c.svc.C}, {"tolerance", c.svc.tolerance}, {"max_sweeps", c.svc.max_sweeps}, {"seed", c.svc.seed}};
  return j.dump(2);
}

pipeline::PipelineConfig pipeline_config_from_json(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, std::string("pipeline config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw Error(ErrorCode::SchemaViolation, "pipeline config root must be an object");
  check_keys(root, "", {"surface", "morph", "feature_source", "analyzers", "weights", "fasttext", "svc"});
  pipeline::PipelineConfig c;
  if (root.contains("surface")) c.surface = parse_surface_object(root["surface"], "surface");
  if (root.contains("morph")) {
    if (!root["morph"].is_string()) invalid("morph", "expected a mode name");
    c.morph.mode = morph::parse_morph_mode(root["morph"].get<std::string>());
  }
  if (root.contains("feature_source")) {
    if (!root["feature_source"].is_string()) invalid("feature_source", "expected a name");
    c.source = pipeline::parse_feature_source(root["feature_source"].get<std::string>());
  }
  if (root.contains("analyzers")) {
    const json& j = require_object(root["analyzers"], "analyzers");
    check_keys(j, "analyzers", {"word", "char", "char_wb"});
    const char* names[3] = {"word", "char", "char_wb"};
    for (std::size_t b = 0; b < 3; ++b) {
      if (!j.contains(names[b])) continue;
      const std::string key = std::string("analyzers.") + names[b];
      const json& a = require_object(j[names[b]], key);
      check_keys(a, key, {"ngram", "max_features"});
      if (a.contains("ngram")) {
        const NgramPair p = get_pair(a["ngram"], key + ".ngram");
        c.analyzers[b].ngram_min = p.min;
        c.analyzers[b].ngram_max = p.max;
      }
      if (a.contains("max_features")) c.analyzers[b].max_features = get_max_features(a["max_features"], key + ".max_features");
    }
  }
  if (root.contains("weights")) c.weights = get_weights(root["weights"], "weights");
  if (root.contains("fasttext")) parse_fasttext(root["fasttext"], c.fasttext);
  std::vector<std::string> warnings;
  if (root.contains("svc")) parse_svc(root["svc"], c.svc, warnings, false);
  return c;
}

}  // namespace adi::harness
