#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "socdim/embeddings.hpp"
#include "socdim/features.hpp"
#include "socdim/folds.hpp"
#include "socdim/model.hpp"

namespace socdim {

// Grid points are visited with the first field varying slowest; ties in tune
// AUC keep the earliest point.
struct LogregGrid {
  std::vector<double> learning_rate{0.3, 0.1, 0.03};
  std::vector<double> l2{0.0, 0.001, 0.01};
  std::vector<std::size_t> epochs{200, 500};
};

struct GbdtGrid {
  std::vector<double> learning_rate{0.3, 0.1};
  std::vector<std::size_t> max_depth{2, 4, 6};
  std::vector<std::size_t> rounds{50, 200};
  std::vector<double> min_leaf{1.0};
};

struct GridConfig {
  LogregGrid logreg;
  GbdtGrid gbdt;
};

using Hyper = std::map<std::string, double>;

struct GridPoint {
  Hyper hyper;
  double tune_auc = 0.0;
};

struct GridResult {
  Hyper best;
  double best_auc = 0.0;
  std::vector<GridPoint> points;  // grid order
  std::variant<LogregParams, GbdtParams> params;  // trained at the best point
};

// Trains on `train` at every grid point and scores `tune`. Epoch and round
// counts reuse one training trajectory per remaining setting.
GridResult grid_search(ModelKind kind, const Dataset& train, const Dataset& tune,
                       const GridConfig& grids);

// Per-sentence inputs shared by every dimension and model kind.
struct FeatureTable {
  std::vector<std::vector<double>> base;  // FeatureExtractor::base_features
  std::vector<std::vector<std::string>> ngrams;  // extract_ngrams
};

FeatureTable build_feature_table(const FeatureExtractor& extractor,
                                 const std::vector<Sentence>& sentences, std::size_t workers = 1);

struct EvaluateOptions {
  std::size_t k = 10;
  std::uint64_t seed = 0;
  GridConfig grids;
  NgramOptions ngrams;
  std::size_t workers = 1;
  const EmbeddingStore* store = nullptr;  // embedding_distance only
  const std::vector<std::string>* anchor_keywords = nullptr;  // default: built-in list
};

// Sentences and their class membership for one dimension.
struct LabeledData {
  const std::vector<Sentence>* sentences = nullptr;
  const FeatureTable* table = nullptr;  // feature models only
  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
};

struct EvaluationReport {
  Dimension dimension = Dimension::kKnowledge;
  ModelKind kind = ModelKind::kLogreg;
  std::vector<double> fold_auc;
  std::vector<Hyper> fold_hyper;
  double mean_auc = 0.0;
  double sd_auc = 0.0;  // sample SD over folds
};

// Per fold: select n-grams from the training split, oversample each split,
// grid-search on tune, score the oversampled test split with the winning
// model.
EvaluationReport evaluate(Dimension dimension, ModelKind kind, const LabeledData& data,
                          const FeatureExtractor* extractor, const EvaluateOptions& options);

// Fold 0 of the same plan: the winning grid model trained on its training
// split, with the n-gram vocabulary attached.
Model train_model(Dimension dimension, ModelKind kind, const LabeledData& data,
                  const FeatureExtractor* extractor, const EvaluateOptions& options);

}  // namespace socdim
