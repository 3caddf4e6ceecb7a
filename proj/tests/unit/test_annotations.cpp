#include <gtest/gtest.h>

#include <algorithm>

#include "socdim/annotations.hpp"
#include "socdim/random.hpp"

using namespace socdim;

namespace {

AnnotationRecord rec(std::string s, std::string a, DimensionSet labels, bool other = false) {
  AnnotationRecord r;
  r.sentence_id = std::move(s);
  r.annotator_id = std::move(a);
  r.labels = labels;
  r.other_flag = other;
  return r;
}

AnnotationRecord gold(std::string s, std::string a, DimensionSet labels, DimensionSet truth) {
  auto r = rec(std::move(s), std::move(a), labels);
  r.is_gold = true;
  r.gold_labels = truth;
  return r;
}

std::vector<AnnotationRecord> golds(const std::string& annotator, int correct, int total) {
  std::vector<AnnotationRecord> out;
  for (int i = 0; i < total; ++i) {
    DimensionSet answer = i < correct ? DimensionSet{Dimension::kFun} : DimensionSet{Dimension::kPower};
    out.push_back(gold("g" + std::to_string(i), annotator, answer, {Dimension::kFun}));
  }
  return out;
}

constexpr auto S = Dimension::kSupport;
constexpr auto Sim = Dimension::kSimilarity;

}  // namespace

TEST(GoldGate, FortyPercentFailureBans) {
  auto records = golds("bad", 6, 10);
  records.push_back(rec("s1", "bad", {S}));
  auto result = apply_gold_gate(records);
  EXPECT_TRUE(result.banned.count("bad"));
  EXPECT_TRUE(result.kept.empty());
}

TEST(GoldGate, SeventyPercentCorrectKept) {
  auto records = golds("ok", 7, 10);
  records.push_back(rec("s1", "ok", {S}));
  auto result = apply_gold_gate(records);
  EXPECT_TRUE(result.banned.empty());
  EXPECT_EQ(result.kept.size(), 11u);
}

TEST(GoldGate, NoGoldsKept) {
  auto result = apply_gold_gate({rec("s1", "new", {S})});
  EXPECT_TRUE(result.banned.empty());
  EXPECT_EQ(result.kept.size(), 1u);
}

TEST(GoldGate, IntersectionCountsAsCorrect) {
  auto result = apply_gold_gate({gold("g", "a", {Dimension::kFun, S}, {Dimension::kFun})});
  EXPECT_TRUE(result.banned.empty());
}

TEST(GoldGate, LoweringThresholdNeverUnbans) {
  std::vector<AnnotationRecord> records;
  for (int a = 0; a <= 10; ++a) {
    auto g = golds("a" + std::to_string(a), a, 10);
    records.insert(records.end(), g.begin(), g.end());
  }
  std::set<std::string> previous;
  for (double t = 1.0; t >= 0.0; t -= 0.05) {
    auto banned = apply_gold_gate(records, t).banned;
    EXPECT_TRUE(std::includes(banned.begin(), banned.end(), previous.begin(), previous.end()));
    previous = banned;
  }
}

TEST(Consensus, QuorumOfTwo) {
  auto c = consensus_labels({rec("s", "a", {S}), rec("s", "b", {S, Sim}), rec("s", "c", {}, true)});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].positive_dims, DimensionSet{S});
  EXPECT_EQ(c[0].annotator_count, 3u);
}

TEST(Consensus, NoPairAgrees) {
  auto c = consensus_labels({rec("s", "a", {Dimension::kFun}), rec("s", "b", {Dimension::kConflict}),
                             rec("s", "c", {Dimension::kStatus})});
  EXPECT_TRUE(c[0].positive_dims.empty());
}

TEST(Consensus, Unanimous) {
  auto r = Dimension::kRomance;
  auto c = consensus_labels({rec("s", "a", {r}), rec("s", "b", {r}), rec("s", "c", {r})});
  EXPECT_EQ(c[0].positive_dims, DimensionSet{r});
}

TEST(Consensus, GoldIgnoredAndOrderInvariant) {
  std::vector<AnnotationRecord> records = {
      rec("s2", "a", {S}), rec("s1", "a", {Sim}), rec("s2", "b", {S}),
      rec("s1", "b", {Sim}), gold("s1", "c", {S}, {S}), rec("s3", "a", {})};
  auto a = consensus_labels(records);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    rng.shuffle(std::span<AnnotationRecord>(records));
    EXPECT_EQ(consensus_labels(records), a);
  }
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0].sentence_id, "s1");
  EXPECT_EQ(a[0].annotator_count, 2u);
  EXPECT_EQ(a[0].positive_dims, DimensionSet{Sim});
}

TEST(Kappa, HandContingencyTable) {
  // a: 1 1 0 0, b: 1 0 0 0 -> p_o = 3/4, p_e = .5*.25 + .5*.75 = .5
  auto k = cohen_kappa({true, true, false, false}, {true, false, false, false});
  ASSERT_TRUE(k);
  EXPECT_DOUBLE_EQ(*k, 0.5);
  EXPECT_FALSE(cohen_kappa({false, false}, {false, false}));
}

TEST(Agreement, PerfectIsOne) {
  std::vector<AnnotationRecord> records;
  Rng rng(2);
  for (int s = 0; s < 50; ++s) {
    DimensionSet labels;
    for (Dimension d : kAllDimensions) {
      if (rng.uniform() < 0.3) labels.insert(d);
    }
    for (const char* a : {"x", "y", "z"}) records.push_back(rec("s" + std::to_string(s), a, labels));
  }
  auto report = agreement_stats(records);
  for (const auto& d : report.per_dimension) {
    ASSERT_TRUE(d.kappa);
    EXPECT_DOUBLE_EQ(*d.kappa, 1.0);
  }
  EXPECT_DOUBLE_EQ(*report.macro_kappa, 1.0);
}

TEST(Agreement, RandomLabelingNearZero) {
  std::vector<AnnotationRecord> records;
  Rng rng(3);
  for (int s = 0; s < 1000; ++s) {
    for (const char* a : {"x", "y"}) {
      DimensionSet labels;
      for (Dimension d : kAllDimensions) {
        if (rng.uniform() < 0.2) labels.insert(d);
      }
      records.push_back(rec("s" + std::to_string(s), a, labels));
    }
  }
  auto report = agreement_stats(records);
  ASSERT_TRUE(report.macro_kappa);
  EXPECT_NEAR(*report.macro_kappa, 0.0, 0.05);
  for (const auto& d : report.per_dimension) {
    EXPECT_GE(*d.kappa, -1.0);
    EXPECT_LE(*d.kappa, 1.0);
  }
}

TEST(Agreement, DegenerateDimensionExcluded) {
  auto report = agreement_stats({rec("s1", "a", {S}), rec("s1", "b", {S}), rec("s2", "a", {}),
                                 rec("s2", "b", {Sim})});
  const auto& fun = report.per_dimension[index_of(Dimension::kFun)];
  EXPECT_FALSE(fun.kappa);
  EXPECT_EQ(fun.excluded, 1u);
  EXPECT_TRUE(report.per_dimension[index_of(S)].kappa);
}

TEST(TrainingSets, VoteRules) {
  auto c = consensus_labels({rec("one", "a", {S}), rec("one", "b", {}),
                             rec("zero", "a", {Sim}), rec("zero", "b", {}),
                             rec("two", "a", {S}), rec("two", "b", {S})});
  auto sets = build_training_sets(c);
  const auto& support = sets[index_of(S)];
  EXPECT_EQ(support.positives, std::vector<std::string>{"two"});
  EXPECT_EQ(support.negatives, std::vector<std::string>{"zero"});
  auto lenient = build_training_sets(c, true);
  EXPECT_EQ(lenient[index_of(S)].negatives, (std::vector<std::string>{"one", "zero"}));
  EXPECT_FALSE(sets[index_of(Dimension::kFun)].trainable());
  for (const auto& set : sets) {
    for (const auto& p : set.positives) {
      EXPECT_EQ(std::count(set.negatives.begin(), set.negatives.end(), p), 0);
    }
  }
}

TEST(LabelDistribution, QuarterEach) {
  std::vector<ConsensusLabel> c(4);
  c[1].positive_dims = {S};
  c[2].positive_dims = {S, Sim};
  c[3].positive_dims = {S, Sim, Dimension::kFun};
  auto h = label_distribution(c).at("all");
  for (double f : h) EXPECT_DOUBLE_EQ(f, 0.25);
}

TEST(LabelDistribution, AllEmptyAndPerSource) {
  std::vector<ConsensusLabel> c(3);
  c[0].sentence_id = "a";
  c[1].sentence_id = "b";
  c[2].sentence_id = "c";
  c[2].positive_dims = {S};
  auto h = label_distribution(c, {{"a", "email"}, {"b", "email"}, {"c", "reddit"}});
  EXPECT_DOUBLE_EQ(h.at("email")[0], 1.0);
  EXPECT_DOUBLE_EQ(h.at("reddit")[1], 1.0);
  EXPECT_DOUBLE_EQ(h.at("all")[0], 2.0 / 3);
  EXPECT_DOUBLE_EQ(label_distribution(std::vector<ConsensusLabel>(5)).at("all")[0], 1.0);
}
