#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "socdim/corpus.hpp"
#include "socdim/dimension.hpp"
#include "socdim/embeddings.hpp"
#include "socdim/features.hpp"
#include "socdim/model.hpp"
#include "socdim/text.hpp"

namespace socdim {

inline constexpr double kLabelThreshold = 0.95;
inline constexpr std::size_t kMinRelationshipMessages = 20;

// Confidence in [0,1] that a sentence carries one dimension.
using SentenceScorer = std::function<double(const Sentence&)>;

struct DimensionScorer {
  Dimension dimension;
  SentenceScorer score;
};

// Wraps a trained model, which must outlive the scorer. The extractor must
// match the model's feature configuration; the store is needed by
// embedding-distance models.
DimensionScorer make_scorer(const Model& model, const FeatureExtractor* extractor,
                            const EmbeddingStore* store);

struct TextLabeling {
  std::string message_id;
  std::array<std::optional<double>, kDimensionCount> max_score;
  DimensionSet labeled;  // max_score > threshold
  bool scoreable = false;  // at least one sentence with a token
};

// Splits the message into sentences, scores each with every scorer and keeps
// the per-dimension maximum.
TextLabeling label_text(const Message& message, std::span<const DimensionScorer> scorers,
                        double threshold = kLabelThreshold,
                        const TextRules& rules = TextRules::builtin());

struct TimelineBucket {
  std::int64_t week_start = 0;  // Monday 00:00 UTC, epoch seconds
  std::size_t messages = 0;
  std::size_t labeled = 0;
  double f = 0.0;
  double zscore = 0.0;
};

struct TimelineSeries {
  Dimension dimension = Dimension::kKnowledge;
  std::vector<TimelineBucket> buckets;  // only weeks with messages, ascending
  bool degenerate = false;              // zero SD; all z-scores are 0
  std::size_t skipped = 0;              // messages without a timestamp
};

std::int64_t week_start(std::int64_t timestamp);

// z = (f - mean) / population SD. Returns false (and all zeros) when the SD
// is zero.
bool zscores(std::span<const double> f, std::vector<double>& z);

// Weekly fraction of flagged messages, then z-scored across weeks.
TimelineSeries weekly_series(std::span<const std::optional<std::int64_t>> timestamps,
                             std::span<const bool> flagged);

// `labelings` is aligned with `messages`.
TimelineSeries timeline(std::span<const Message> messages, std::span<const TextLabeling> labelings,
                        Dimension dimension);

struct RelationshipLabel {
  std::optional<Dimension> dimension;
  std::string reason;  // set when abstaining
  std::size_t messages = 0;
  std::array<std::size_t, kDimensionCount> counts{};
};

// Most frequent labeled dimension over the messages of one pair. Ties go to
// the higher mean max-score, then canonical order.
RelationshipLabel relationship_label(std::span<const TextLabeling> labelings,
                                     std::size_t min_messages = kMinRelationshipMessages);

using UserPair = std::pair<std::string, std::string>;  // lexicographically ordered

// Message indices per undirected author/recipient pair. Messages without a
// recipient or addressed to their author are left out.
std::map<UserPair, std::vector<std::size_t>> group_by_pair(std::span<const Message> messages);

// Labeled-message fraction per region over messages whose author is mapped.
// Regions without messages are omitted.
std::map<std::string, double> state_prevalence(std::span<const Message> messages,
                                               std::span<const TextLabeling> labelings,
                                               const GeoMap& geo, Dimension dimension);

// --- regression -------------------------------------------------------------

struct Coefficient {
  std::string name;
  double beta = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p = 1.0;
  std::string stars;
};

struct RegressionResult {
  std::string outcome;
  Coefficient intercept;
  std::vector<Coefficient> predictors;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  std::optional<double> durbin_watson;  // undefined when every residual is 0
  std::size_t n = 0;
  std::vector<std::string> regions;  // row order, lexicographic
  std::vector<double> residuals;
  bool standardized = true;
};

struct Predictor {
  std::string name;
  std::map<std::string, double> values;  // region -> value
};

// "***" for p < 0.01, "**" for p < 0.05, "*" for p < 0.1.
std::string significance_stars(double p);

std::optional<double> durbin_watson(std::span<const double> residuals);

// OLS with intercept over the regions present in the outcome and every
// predictor. With `standardize` all variables are z-scored (sample SD) first.
// Throws CollinearityError naming the predictors involved in a rank
// deficiency, InvalidArgument when fewer than p + 2 regions remain.
RegressionResult ols_regress(const std::string& outcome_name,
                             const std::map<std::string, double>& outcome,
                             const std::vector<Predictor>& predictors, bool standardize = true);

}  // namespace socdim
