#include "socdim/evaluate.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "socdim/error.hpp"
#include "socdim/metrics.hpp"
#include "socdim/parallel.hpp"
#include "socdim/random.hpp"

namespace socdim {
namespace {

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> score_rows(const Dataset& data, const std::function<double(std::span<const double>)>& f) {
  std::vector<double> out(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) out[i] = f(data.row(i));
  return out;
}

double weighted_auc(const Dataset& data, const std::vector<double>& scores) {
  return auc(scores, data.y, data.w);
}

GridResult search_logreg(const Dataset& train, const Dataset& tune, const LogregGrid& g) {
  auto epochs = sorted_unique(g.epochs);
  GridResult result;
  result.best_auc = -1.0;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<LogregParams>> paths;
  for (std::size_t a = 0; a < g.learning_rate.size(); ++a) {
    for (std::size_t b = 0; b < g.l2.size(); ++b) {
      paths[{a, b}] = train_logreg_path(train, g.l2[b], g.learning_rate[a], epochs);
    }
  }
  for (std::size_t a = 0; a < g.learning_rate.size(); ++a) {
    for (std::size_t b = 0; b < g.l2.size(); ++b) {
      for (std::size_t e : g.epochs) {
        std::size_t slot = static_cast<std::size_t>(
            std::lower_bound(epochs.begin(), epochs.end(), e) - epochs.begin());
        const auto& params = paths[{a, b}][slot];
        double score = weighted_auc(
            tune, score_rows(tune, [&](auto x) { return logreg_margin(params, x); }));
        Hyper h{{"learning_rate", g.learning_rate[a]},
                {"l2", g.l2[b]},
                {"epochs", static_cast<double>(e)}};
        result.points.push_back({h, score});
        if (score > result.best_auc) {
          result.best_auc = score;
          result.best = h;
          result.params = params;
        }
      }
    }
  }
  return result;
}

GridResult search_gbdt(const Dataset& train, const Dataset& tune, const GbdtGrid& g) {
  if (g.rounds.empty()) throw InvalidArgument("grid search: empty rounds list");
  std::size_t max_rounds = *std::max_element(g.rounds.begin(), g.rounds.end());
  GridResult result;
  result.best_auc = -1.0;
  for (double lr : g.learning_rate) {
    for (std::size_t depth : g.max_depth) {
      for (double min_leaf : g.min_leaf) {
        GbdtParams full = train_gbdt(train, {lr, depth, max_rounds, min_leaf});
        for (std::size_t rounds : g.rounds) {
          double score = weighted_auc(
              tune, score_rows(tune, [&](auto x) { return gbdt_margin(full, x, rounds); }));
          Hyper h{{"learning_rate", lr},
                  {"max_depth", static_cast<double>(depth)},
                  {"rounds", static_cast<double>(rounds)},
                  {"min_leaf", min_leaf}};
          result.points.push_back({h, score});
          if (score > result.best_auc) {
            result.best_auc = score;
            result.best = h;
            GbdtParams cut = full;
            cut.trees.resize(std::min(rounds, cut.trees.size()));
            result.params = std::move(cut);
          }
        }
      }
    }
  }
  return result;
}

struct FoldOutcome {
  double auc = 0.0;
  Hyper hyper;
  std::optional<Model> model;
};

class FoldRunner {
 public:
  FoldRunner(Dimension dimension, ModelKind kind, const LabeledData& data,
             const FeatureExtractor* extractor, const EvaluateOptions& options)
      : dimension_(dimension), kind_(kind), data_(data), extractor_(extractor), options_(options) {
    if (!data.sentences) throw InvalidArgument("evaluate: no sentences given");
    label_.assign(data.sentences->size(), -1);
    for (auto i : data.positives) label_.at(i) = 1;
    for (auto i : data.negatives) {
      if (label_.at(i) == 1) throw InvalidArgument("evaluate: sentence in both classes");
      label_[i] = 0;
    }
    plan_ = make_folds(data.positives, data.negatives, options.k,
                       derive_seed(options.seed, {index_of(dimension)}), to_string(dimension));
    if (kind == ModelKind::kEmbeddingDistance) {
      if (!options.store) throw InvalidArgument("embedding_distance needs an embedding store");
      anchor_ = options.anchor_keywords
                    ? anchor_vector(dimension, *options.anchor_keywords, *options.store)
                    : anchor_vector(dimension, *options.store);
      // Only labeled sentences are ever scored.
      emb_scores_.assign(data.sentences->size(), 0.0);
      for (auto ids : {&data.positives, &data.negatives}) {
        for (auto i : *ids) {
          try {
            emb_scores_[i] =
                pseudo_confidence(distance_score((*data.sentences)[i], *anchor_, *options.store));
          } catch (const NoVectorError&) {
            emb_scores_[i] = 0.0;
          }
        }
      }
    } else {
      if (!extractor || !data.table) throw InvalidArgument("feature models need an extractor and feature table");
    }
  }

  std::size_t folds() const { return plan_.folds.size(); }

  FoldOutcome run(std::size_t f, bool keep_model) const {
    const Fold& fold = plan_.folds[f];
    auto split_ids = [&](const std::vector<std::size_t>& ids, std::uint64_t stream) {
      std::vector<int> labels;
      for (auto i : ids) labels.push_back(label_[i]);
      return oversample(ids, labels,
                        derive_seed(options_.seed, {index_of(dimension_), f, stream}));
    };
    auto test_ids = split_ids(fold.test, 3);

    FoldOutcome out;
    if (kind_ == ModelKind::kEmbeddingDistance) {
      auto counts = multiplicities(test_ids);
      std::vector<double> scores, weights;
      std::vector<int> labels;
      for (auto [id, w] : counts) {
        scores.push_back(emb_scores_[id]);
        labels.push_back(label_[id]);
        weights.push_back(w);
      }
      out.auc = auc(scores, labels, weights);
      if (keep_model) {
        Model m;
        m.kind = kind_;
        m.dimension = dimension_;
        m.meta.seed = options_.seed;
        m.meta.fold = static_cast<int>(f);
        m.params = EmbeddingParams{*anchor_};
        out.model = std::move(m);
      }
      return out;
    }

    std::optional<NgramVocabulary> vocab;
    const auto& config = extractor_->config();
    if (config.ngrams) {
      TokenRefs positives, corpus;
      for (auto i : fold.train) {
        const auto* tokens = &(*data_.sentences)[i].tokens;
        corpus.push_back(tokens);
        if (label_[i] == 1) positives.push_back(tokens);
      }
      NgramOptions opts = options_.ngrams;
      opts.k = config.ngram_k;
      vocab = select_ngrams(positives, corpus, dimension_, opts);
    }

    Dataset train = dataset(split_ids(fold.train, 1), vocab);
    Dataset tune = dataset(split_ids(fold.tune, 2), vocab);
    Dataset test = dataset(test_ids, vocab);
    GridResult grid = grid_search(kind_, train, tune, options_.grids);

    Model m;
    m.kind = kind_;
    m.dimension = dimension_;
    m.schema_id = extractor_->schema().id;
    m.feature_config = config;
    m.vocab = vocab;
    m.meta.seed = options_.seed;
    m.meta.hyper = grid.best;
    m.meta.fold = static_cast<int>(f);
    std::visit([&](auto& p) { m.params = p; }, grid.params);

    out.auc = weighted_auc(test, score_rows(test, [&](auto x) { return predict_raw(m, x); }));
    out.hyper = grid.best;
    if (keep_model) out.model = std::move(m);
    return out;
  }

 private:
  Dataset dataset(const std::vector<std::size_t>& ids,
                  const std::optional<NgramVocabulary>& vocab) const {
    const auto& schema = extractor_->schema();
    Dataset d;
    d.cols = schema.size();
    std::vector<double> row(d.cols);
    for (auto [id, w] : multiplicities(ids)) {
      std::fill(row.begin(), row.end(), 0.0);
      const auto& base = data_.table->base.at(id);
      std::copy(base.begin(), base.end(), row.begin());
      if (vocab) {
        for (const auto& g : data_.table->ngrams.at(id)) {
          if (auto slot = vocab->slot(g)) row[schema.ngram_offset + *slot] += 1.0;
        }
      }
      d.add(row, label_[id], w);
    }
    return d;
  }

  Dimension dimension_;
  ModelKind kind_;
  const LabeledData& data_;
  const FeatureExtractor* extractor_;
  const EvaluateOptions& options_;
  std::vector<int> label_;
  FoldPlan plan_;
  std::optional<DimensionAnchor> anchor_;
  std::vector<double> emb_scores_;
};

}  // namespace

GridResult grid_search(ModelKind kind, const Dataset& train, const Dataset& tune,
                       const GridConfig& grids) {
  if (tune.rows() == 0) throw InvalidArgument("grid search: empty tune split");
  switch (kind) {
    case ModelKind::kLogreg: {
      const auto& g = grids.logreg;
      if (g.learning_rate.empty() || g.l2.empty() || g.epochs.empty()) {
        throw InvalidArgument("grid search: empty logreg grid");
      }
      return search_logreg(train, tune, g);
    }
    case ModelKind::kGbdt: {
      const auto& g = grids.gbdt;
      if (g.learning_rate.empty() || g.max_depth.empty() || g.rounds.empty() ||
          g.min_leaf.empty()) {
        throw InvalidArgument("grid search: empty gbdt grid");
      }
      return search_gbdt(train, tune, g);
    }
    case ModelKind::kEmbeddingDistance:
      break;
  }
  throw InvalidArgument("grid search: embedding_distance has no hyperparameters");
}

FeatureTable build_feature_table(const FeatureExtractor& extractor,
                                 const std::vector<Sentence>& sentences, std::size_t workers) {
  FeatureTable table;
  table.base.resize(sentences.size());
  table.ngrams.resize(sentences.size());
  parallel_for(sentences.size(), workers, [&](std::size_t i) {
    table.base[i] = extractor.base_features(sentences[i]);
    table.ngrams[i] = extract_ngrams(sentences[i].tokens);
  });
  return table;
}

EvaluationReport evaluate(Dimension dimension, ModelKind kind, const LabeledData& data,
                          const FeatureExtractor* extractor, const EvaluateOptions& options) {
  FoldRunner runner(dimension, kind, data, extractor, options);
  std::vector<FoldOutcome> outcomes(runner.folds());
  parallel_for(runner.folds(), options.workers,
               [&](std::size_t f) { outcomes[f] = runner.run(f, false); });

  EvaluationReport report;
  report.dimension = dimension;
  report.kind = kind;
  for (auto& o : outcomes) {
    report.fold_auc.push_back(o.auc);
    report.fold_hyper.push_back(std::move(o.hyper));
  }
  report.mean_auc = mean(report.fold_auc);
  report.sd_auc = sample_sd(report.fold_auc);
  return report;
}

Model train_model(Dimension dimension, ModelKind kind, const LabeledData& data,
                  const FeatureExtractor* extractor, const EvaluateOptions& options) {
  FoldRunner runner(dimension, kind, data, extractor, options);
  return std::move(*runner.run(0, true).model);
}

}  // namespace socdim
