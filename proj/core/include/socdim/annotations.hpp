#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "socdim/corpus.hpp"
#include "socdim/dimension.hpp"

namespace socdim {

struct GateResult {
  std::vector<AnnotationRecord> kept;
  std::set<std::string> banned;
};

// A gold answer is correct when it shares at least one dimension with the
// gold labels. Annotators failing >= fail_threshold of their golds lose every
// record; annotators without golds are kept.
GateResult apply_gold_gate(const std::vector<AnnotationRecord>& records,
                           double fail_threshold = 0.4);

struct ConsensusLabel {
  std::string sentence_id;
  DimensionSet positive_dims;
  std::size_t annotator_count = 0;
  // Annotators of the sentence that selected each dimension.
  std::array<std::size_t, kDimensionCount> votes{};

  friend bool operator==(const ConsensusLabel&, const ConsensusLabel&) = default;
};

// Gold records are ignored. Output is sorted by sentence id.
std::vector<ConsensusLabel> consensus_labels(const std::vector<AnnotationRecord>& records,
                                             std::size_t quorum = 2);

// Two raters' binary judgments over the same items. Returns nullopt when the
// expected agreement is 1 (kappa undefined).
std::optional<double> cohen_kappa(const std::vector<bool>& a, const std::vector<bool>& b);

struct DimensionAgreement {
  std::optional<double> kappa;  // mean over annotator pairs with defined kappa
  std::size_t pairs = 0;
  std::size_t excluded = 0;
};

struct AgreementReport {
  std::array<DimensionAgreement, kDimensionCount> per_dimension;
  std::optional<double> macro_kappa;
  std::size_t items = 0;
};

// Pairwise Cohen's kappa per dimension over items both annotators rated,
// averaged over annotator pairs, then macro-averaged over dimensions. Gold
// records are ignored.
AgreementReport agreement_stats(const std::vector<AnnotationRecord>& records);

struct TrainingSet {
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
  bool trainable() const { return !positives.empty(); }
};

using TrainingSets = std::array<TrainingSet, kDimensionCount>;

// P_d: consensus positives. N_d: sentences nobody labeled with d. Sentences
// with a single vote for d go to N_d only when `single_vote_negative`.
TrainingSets build_training_sets(const std::vector<ConsensusLabel>& consensus,
                                 bool single_vote_negative = false);

// Fractions of sentences with 0, 1, 2 and 3+ consensus dimensions.
using LabelHistogram = std::array<double, 4>;

// Keyed by source name; "all" aggregates every sentence. Sentences missing
// from `source_of` are counted under "unknown".
std::map<std::string, LabelHistogram> label_distribution(
    const std::vector<ConsensusLabel>& consensus,
    const std::map<std::string, std::string>& source_of = {});

}  // namespace socdim
