#include <fstream>
#include <sstream>

#include "json.hpp"
#include "socdim/error.hpp"
#include "socdim/model.hpp"

namespace socdim {

using nlohmann::json;

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::kLogreg: return "logreg";
    case ModelKind::kGbdt: return "gbdt";
    case ModelKind::kEmbeddingDistance: return "embedding_distance";
  }
  return "logreg";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  if (name == "logreg") return ModelKind::kLogreg;
  if (name == "gbdt") return ModelKind::kGbdt;
  if (name == "embedding_distance" || name == "embedding") return ModelKind::kEmbeddingDistance;
  return std::nullopt;
}

double predict_raw(const Model& model, std::span<const double> features) {
  if (const auto* lr = std::get_if<LogregParams>(&model.params)) {
    return sigmoid(logreg_margin(*lr, features));
  }
  if (const auto* gb = std::get_if<GbdtParams>(&model.params)) {
    return sigmoid(gbdt_margin(*gb, features));
  }
  throw InvalidArgument("embedding-distance models score sentences, not feature vectors");
}

double predict(const Model& model, const FeatureVector& features) {
  if (features.schema_id != model.schema_id) {
    throw SchemaMismatch("feature schema " + features.schema_id + " does not match model schema " +
                         model.schema_id);
  }
  return predict_raw(model, features.values);
}

double predict(const Model& model, const Sentence& sentence, const FeatureExtractor* extractor,
               const EmbeddingStore* store) {
  if (const auto* emb = std::get_if<EmbeddingParams>(&model.params)) {
    if (!store) throw InvalidArgument("embedding-distance model needs an embedding store");
    try {
      return pseudo_confidence(distance_score(sentence, emb->anchor, *store));
    } catch (const NoVectorError&) {
      return 0.0;
    }
  }
  if (!extractor) throw InvalidArgument("feature model needs a feature extractor");
  const NgramVocabulary* vocab = model.vocab ? &*model.vocab : nullptr;
  return predict(model, extractor->extract(sentence, vocab));
}

// --- JSON -----------------------------------------------------------------

namespace {

constexpr std::string_view kFormat = "socdim-model";
constexpr int kVersion = 1;

json tree_to_json(const Tree& tree) {
  json nodes = json::array();
  for (const auto& n : tree) {
    if (n.feature < 0) {
      nodes.push_back({{"leaf", n.value}});
    } else {
      nodes.push_back(
          {{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right}});
    }
  }
  return nodes;
}

Tree tree_from_json(const json& j) {
  Tree tree;
  for (const auto& n : j) {
    TreeNode node;
    if (n.contains("leaf")) {
      node.value = n.at("leaf").get<double>();
    } else {
      node.feature = n.at("feature").get<int>();
      node.threshold = n.at("threshold").get<double>();
      node.left = n.at("left").get<int>();
      node.right = n.at("right").get<int>();
    }
    tree.push_back(node);
  }
  auto valid = [&](int child) { return child > 0 && static_cast<std::size_t>(child) < tree.size(); };
  for (const auto& n : tree) {
    if (n.feature >= 0 && (!valid(n.left) || !valid(n.right))) {
      throw FormatError("model file: tree node points outside the tree");
    }
  }
  if (tree.empty()) throw FormatError("model file: empty tree");
  return tree;
}

}  // namespace

std::string model_to_json(const Model& model) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["kind"] = to_string(model.kind);
  j["dimension"] = to_string(model.dimension);
  j["schema_id"] = model.schema_id;
  const auto& fc = model.feature_config;
  j["features"] = {{"style", fc.style},         {"readability", fc.readability},
                   {"lexicons", fc.lexicons},   {"sentiment", fc.sentiment},
                   {"ngrams", fc.ngrams},       {"ngram_k", fc.ngram_k}};
  if (model.vocab) {
    json entries = json::array();
    for (const auto& e : model.vocab->entries()) entries.push_back({e.ngram, e.xi});
    j["vocab"] = {{"min_count", model.vocab->min_count()},
                  {"k", model.vocab->k()},
                  {"alpha", model.vocab->alpha()},
                  {"entries", entries}};
  } else {
    j["vocab"] = nullptr;
  }
  j["meta"] = {{"seed", model.meta.seed}, {"hyper", model.meta.hyper}, {"fold", model.meta.fold}};

  json p;
  if (const auto* lr = std::get_if<LogregParams>(&model.params)) {
    p = {{"weights", lr->weights}, {"bias", lr->bias}, {"mean", lr->mean}, {"scale", lr->scale}};
  } else if (const auto* gb = std::get_if<GbdtParams>(&model.params)) {
    json trees = json::array();
    for (const auto& t : gb->trees) trees.push_back(tree_to_json(t));
    p = {{"base_score", gb->base_score}, {"learning_rate", gb->learning_rate}, {"trees", trees}};
  } else {
    const auto& a = std::get<EmbeddingParams>(model.params).anchor;
    p = {{"keywords", a.keywords}, {"vector", a.vector}};
  }
  j["params"] = p;
  return j.dump(1);
}

Model model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat) throw FormatError("not a socdim model file");
    if (j.at("version").get<int>() != kVersion) throw FormatError("unsupported model file version");
    Model m;
    auto kind = parse_model_kind(j.at("kind").get<std::string>());
    auto dim = parse_dimension(j.at("dimension").get<std::string>());
    if (!kind || !dim) throw FormatError("model file: unknown kind or dimension");
    m.kind = *kind;
    m.dimension = *dim;
    m.schema_id = j.at("schema_id").get<std::string>();
    const auto& fc = j.at("features");
    m.feature_config.style = fc.at("style").get<bool>();
    m.feature_config.readability = fc.at("readability").get<bool>();
    m.feature_config.lexicons = fc.at("lexicons").get<bool>();
    m.feature_config.sentiment = fc.at("sentiment").get<bool>();
    m.feature_config.ngrams = fc.at("ngrams").get<bool>();
    m.feature_config.ngram_k = fc.at("ngram_k").get<std::size_t>();
    if (const auto& v = j.at("vocab"); !v.is_null()) {
      std::vector<NgramEntry> entries;
      for (const auto& e : v.at("entries")) {
        entries.push_back({e.at(0).get<std::string>(), e.at(1).get<double>()});
      }
      m.vocab.emplace(m.dimension, std::move(entries), v.at("min_count").get<std::size_t>(),
                      v.at("k").get<std::size_t>(), v.at("alpha").get<double>());
    }
    const auto& meta = j.at("meta");
    m.meta.seed = meta.at("seed").get<std::uint64_t>();
    m.meta.hyper = meta.at("hyper").get<std::map<std::string, double>>();
    m.meta.fold = meta.at("fold").get<int>();

    const auto& p = j.at("params");
    switch (m.kind) {
      case ModelKind::kLogreg: {
        LogregParams lr;
        lr.weights = p.at("weights").get<std::vector<double>>();
        lr.bias = p.at("bias").get<double>();
        lr.mean = p.at("mean").get<std::vector<double>>();
        lr.scale = p.at("scale").get<std::vector<double>>();
        if (lr.mean.size() != lr.weights.size() || lr.scale.size() != lr.weights.size()) {
          throw FormatError("model file: logistic parameter widths differ");
        }
        m.params = std::move(lr);
        break;
      }
      case ModelKind::kGbdt: {
        GbdtParams gb;
        gb.base_score = p.at("base_score").get<double>();
        gb.learning_rate = p.at("learning_rate").get<double>();
        for (const auto& t : p.at("trees")) gb.trees.push_back(tree_from_json(t));
        m.params = std::move(gb);
        break;
      }
      case ModelKind::kEmbeddingDistance: {
        EmbeddingParams e;
        e.anchor.dimension = m.dimension;
        e.anchor.keywords = p.at("keywords").get<std::vector<std::string>>();
        e.anchor.vector = p.at("vector").get<std::vector<double>>();
        m.params = std::move(e);
        break;
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("model file: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << model_to_json(model) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace socdim
