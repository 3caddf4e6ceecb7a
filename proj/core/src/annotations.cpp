#include "socdim/annotations.hpp"

#include <algorithm>
#include <unordered_map>

#include "socdim/error.hpp"

namespace socdim {

GateResult apply_gold_gate(const std::vector<AnnotationRecord>& records, double fail_threshold) {
  struct Tally {
    std::size_t golds = 0;
    std::size_t failed = 0;
  };
  std::map<std::string, Tally> tallies;
  for (const auto& r : records) {
    if (!r.is_gold) continue;
    auto& t = tallies[r.annotator_id];
    ++t.golds;
    bool correct = false;
    for (Dimension d : kAllDimensions) {
      if (r.labels.contains(d) && r.gold_labels.contains(d)) correct = true;
    }
    if (!correct) ++t.failed;
  }

  GateResult out;
  for (const auto& [annotator, t] : tallies) {
    double rate = static_cast<double>(t.failed) / static_cast<double>(t.golds);
    if (rate >= fail_threshold) out.banned.insert(annotator);
  }
  for (const auto& r : records) {
    if (!out.banned.count(r.annotator_id)) out.kept.push_back(r);
  }
  return out;
}

std::vector<ConsensusLabel> consensus_labels(const std::vector<AnnotationRecord>& records,
                                             std::size_t quorum) {
  if (quorum == 0) throw InvalidArgument("quorum must be at least 1");
  std::map<std::string, std::map<std::string, DimensionSet>> by_sentence;
  for (const auto& r : records) {
    if (r.is_gold) continue;
    // One judgment per annotator and sentence; repeated rows merge.
    auto& labels = by_sentence[r.sentence_id][r.annotator_id];
    for (Dimension d : r.labels.to_vector()) labels.insert(d);
  }

  std::vector<ConsensusLabel> out;
  out.reserve(by_sentence.size());
  for (const auto& [sentence, annotators] : by_sentence) {
    ConsensusLabel c;
    c.sentence_id = sentence;
    c.annotator_count = annotators.size();
    for (const auto& [_, labels] : annotators) {
      for (Dimension d : labels.to_vector()) ++c.votes[index_of(d)];
    }
    for (Dimension d : kAllDimensions) {
      if (c.votes[index_of(d)] >= quorum) c.positive_dims.insert(d);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<double> cohen_kappa(const std::vector<bool>& a, const std::vector<bool>& b) {
  if (a.size() != b.size()) throw InvalidArgument("kappa: rating lists differ in length");
  if (a.empty()) return std::nullopt;
  double n = static_cast<double>(a.size());
  double agree = 0, a_yes = 0, b_yes = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++agree;
    if (a[i]) ++a_yes;
    if (b[i]) ++b_yes;
  }
  double po = agree / n;
  double pa = a_yes / n, pb = b_yes / n;
  double pe = pa * pb + (1 - pa) * (1 - pb);
  if (pe >= 1.0) return std::nullopt;
  return (po - pe) / (1 - pe);
}

AgreementReport agreement_stats(const std::vector<AnnotationRecord>& records) {
  // annotator -> sentence -> labels
  std::map<std::string, std::map<std::string, DimensionSet>> ratings;
  std::set<std::string> items;
  for (const auto& r : records) {
    if (r.is_gold) continue;
    auto& labels = ratings[r.annotator_id][r.sentence_id];
    for (Dimension d : r.labels.to_vector()) labels.insert(d);
    items.insert(r.sentence_id);
  }

  AgreementReport report;
  report.items = items.size();
  std::array<double, kDimensionCount> sums{};
  for (auto i = ratings.begin(); i != ratings.end(); ++i) {
    for (auto j = std::next(i); j != ratings.end(); ++j) {
      std::vector<const DimensionSet*> left, right;
      for (const auto& [sentence, labels] : i->second) {
        auto other = j->second.find(sentence);
        if (other == j->second.end()) continue;
        left.push_back(&labels);
        right.push_back(&other->second);
      }
      if (left.empty()) continue;
      for (Dimension d : kAllDimensions) {
        std::vector<bool> a, b;
        for (std::size_t k = 0; k < left.size(); ++k) {
          a.push_back(left[k]->contains(d));
          b.push_back(right[k]->contains(d));
        }
        auto& slot = report.per_dimension[index_of(d)];
        if (auto kappa = cohen_kappa(a, b)) {
          sums[index_of(d)] += *kappa;
          ++slot.pairs;
        } else {
          ++slot.excluded;
        }
      }
    }
  }

  double macro = 0.0;
  std::size_t defined = 0;
  for (Dimension d : kAllDimensions) {
    auto& slot = report.per_dimension[index_of(d)];
    if (slot.pairs == 0) continue;
    slot.kappa = sums[index_of(d)] / static_cast<double>(slot.pairs);
    macro += *slot.kappa;
    ++defined;
  }
  if (defined > 0) report.macro_kappa = macro / static_cast<double>(defined);
  return report;
}

TrainingSets build_training_sets(const std::vector<ConsensusLabel>& consensus,
                                 bool single_vote_negative) {
  TrainingSets sets;
  for (const auto& c : consensus) {
    for (Dimension d : kAllDimensions) {
      auto& set = sets[index_of(d)];
      std::size_t votes = c.votes[index_of(d)];
      if (c.positive_dims.contains(d)) {
        set.positives.push_back(c.sentence_id);
      } else if (votes == 0 || (single_vote_negative && votes == 1)) {
        set.negatives.push_back(c.sentence_id);
      }
    }
  }
  return sets;
}

std::map<std::string, LabelHistogram> label_distribution(
    const std::vector<ConsensusLabel>& consensus,
    const std::map<std::string, std::string>& source_of) {
  std::map<std::string, std::array<std::size_t, 4>> counts;
  for (const auto& c : consensus) {
    std::size_t bucket = std::min<std::size_t>(c.positive_dims.size(), 3);
    ++counts["all"][bucket];
    if (!source_of.empty()) {
      auto it = source_of.find(c.sentence_id);
      ++counts[it == source_of.end() ? "unknown" : it->second][bucket];
    }
  }
  std::map<std::string, LabelHistogram> out;
  for (const auto& [source, n] : counts) {
    double total = static_cast<double>(n[0] + n[1] + n[2] + n[3]);
    LabelHistogram h{};
    for (std::size_t i = 0; i < 4; ++i) h[i] = static_cast<double>(n[i]) / total;
    out[source] = h;
  }
  if (out.empty()) out["all"] = LabelHistogram{1.0, 0.0, 0.0, 0.0};
  return out;
}

}  // namespace socdim
