#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "socdim/dimension.hpp"
#include "socdim/embeddings.hpp"
#include "socdim/features.hpp"

namespace socdim {

// Dense row-major training matrix. Row weights stand for repeated rows, so
// an oversampled split is stored once with integer multiplicities.
struct Dataset {
  std::size_t cols = 0;
  std::vector<double> x;
  std::vector<int> y;
  std::vector<double> w;

  std::size_t rows() const { return y.size(); }
  std::span<const double> row(std::size_t i) const { return {x.data() + i * cols, cols}; }
  void add(std::span<const double> features, int label, double weight = 1.0);
};

// --- logistic regression ----------------------------------------------------

struct LogregHyper {
  double l2 = 0.0;
  double learning_rate = 0.1;
  std::size_t epochs = 200;
};

struct LogregParams {
  std::vector<double> weights;  // on standardized features
  double bias = 0.0;
  std::vector<double> mean;     // standardization applied before `weights`
  std::vector<double> scale;
};

// Weighted mean log loss plus (l2/2)||w||^2 over standardized rows; the bias
// is the last parameter and is not penalized.
class LogisticObjective {
 public:
  LogisticObjective(const Dataset& data, double l2);

  std::size_t dim() const { return data_.cols + 1; }
  double loss(std::span<const double> params) const;
  std::vector<double> gradient(std::span<const double> params) const;
  // Loss at `params`, writing the gradient into `grad` in the same pass.
  double evaluate(std::span<const double> params, std::vector<double>& grad) const;

 private:
  const Dataset& data_;
  double l2_;
  double total_weight_ = 0.0;
};

// Column means and standard deviations under the row weights; a zero SD
// becomes 1.
void standardization(const Dataset& data, std::vector<double>& mean, std::vector<double>& scale);
Dataset standardize(const Dataset& data, std::span<const double> mean,
                    std::span<const double> scale);

// Full-batch gradient descent from zero. Returns one parameter set per entry
// of `epochs` (ascending), sharing the trajectory. Throws TrainingError on a
// non-finite loss.
std::vector<LogregParams> train_logreg_path(const Dataset& data, double l2, double learning_rate,
                                            std::span<const std::size_t> epochs);
LogregParams train_logreg(const Dataset& data, const LogregHyper& hyper);

double logreg_margin(const LogregParams& p, std::span<const double> x);

// --- gradient-boosted trees ------------------------------------------------

struct GbdtHyper {
  double learning_rate = 0.1;
  std::size_t max_depth = 4;
  std::size_t rounds = 100;
  double min_leaf = 1.0;  // minimum summed row weight per child
};

inline constexpr double kGbdtLambda = 1.0;

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // x < threshold goes left
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf output, learning rate applied
};

using Tree = std::vector<TreeNode>;

struct GbdtParams {
  double base_score = 0.0;
  double learning_rate = 0.1;
  std::vector<Tree> trees;
};

GbdtParams train_gbdt(const Dataset& data, const GbdtHyper& hyper);

// Margin using only the first `rounds` trees (all when nullopt).
double gbdt_margin(const GbdtParams& p, std::span<const double> x,
                   std::optional<std::size_t> rounds = std::nullopt);

// --- models ---------------------------------------------------------------

enum class ModelKind { kLogreg, kGbdt, kEmbeddingDistance };
std::string_view to_string(ModelKind k);
std::optional<ModelKind> parse_model_kind(std::string_view name);

struct TrainingMeta {
  std::uint64_t seed = 0;
  std::map<std::string, double> hyper;
  int fold = -1;
};

struct EmbeddingParams {
  DimensionAnchor anchor;
};

struct Model {
  ModelKind kind = ModelKind::kLogreg;
  Dimension dimension = Dimension::kKnowledge;
  std::string schema_id;  // empty for embedding_distance
  FeatureConfig feature_config;
  std::optional<NgramVocabulary> vocab;
  TrainingMeta meta;
  std::variant<LogregParams, GbdtParams, EmbeddingParams> params;
};

double sigmoid(double z);

// Feature models only. Throws SchemaMismatch when the vector was built with
// another schema.
double predict(const Model& model, const FeatureVector& features);
double predict_raw(const Model& model, std::span<const double> features);

// Any kind. Feature models extract with `extractor`; the embedding model
// returns 1/(1+distance) and 0 for sentences without an in-vocabulary word.
double predict(const Model& model, const Sentence& sentence, const FeatureExtractor* extractor,
               const EmbeddingStore* store);

std::string model_to_json(const Model& model);
Model model_from_json(std::string_view text);
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace socdim
