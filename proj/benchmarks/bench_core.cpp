#include <benchmark/benchmark.h>

#include <memory>
#include <string>
#include <vector>

#include "socdim/evaluate.hpp"
#include "socdim/features.hpp"
#include "socdim/metrics.hpp"
#include "socdim/model.hpp"
#include "socdim/random.hpp"
#include "socdim/text.hpp"

using namespace socdim;

namespace {

std::shared_ptr<const ResourceBundle> bundle() {
  static auto b = std::make_shared<const ResourceBundle>(load_resources(SOCDIM_BENCH_DATA_DIR));
  return b;
}

const char* kText =
    "Thank you so much for helping me move last weekend, I really could not have done it "
    "without you! We should grab dinner soon... maybe Friday? I'm SO grateful :)";

Dataset random_dataset(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  Dataset d;
  d.cols = cols;
  std::vector<double> row(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      // Mostly-zero columns, like lexicon and n-gram counts.
      row[j] = j % 3 == 0 ? rng.normal() : static_cast<double>(rng.below(4) == 0);
      s += row[j] * ((j % 5) - 2.0) * 0.3;
    }
    d.add(row, rng.uniform() < sigmoid(s) ? 1 : 0);
  }
  return d;
}

}  // namespace

static void BM_SplitSentences(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(split_sentences(kText));
}
BENCHMARK(BM_SplitSentences);

static void BM_BaseFeatures(benchmark::State& state) {
  FeatureExtractor extractor(bundle(), FeatureConfig{});
  auto sentence = make_sentence(kText);
  for (auto _ : state) benchmark::DoNotOptimize(extractor.base_features(sentence));
}
BENCHMARK(BM_BaseFeatures);

static void BM_Auc(benchmark::State& state) {
  Rng rng(1);
  std::vector<double> scores(static_cast<std::size_t>(state.range(0)));
  std::vector<int> labels(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = static_cast<double>(rng.below(1000));
    labels[i] = rng.uniform() < 0.3;
  }
  for (auto _ : state) benchmark::DoNotOptimize(auc(scores, labels));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Auc)->RangeMultiplier(10)->Range(100, 100000)->Complexity(benchmark::oNLogN);

static void BM_LogregPath(benchmark::State& state) {
  auto data = random_dataset(2000, 175, 2);
  std::vector<std::size_t> epochs{200, 500};
  for (auto _ : state) benchmark::DoNotOptimize(train_logreg_path(data, 0.001, 0.1, epochs));
}
BENCHMARK(BM_LogregPath)->Unit(benchmark::kMillisecond);

static void BM_Gbdt(benchmark::State& state) {
  auto data = random_dataset(2000, 175, 3);
  GbdtHyper hyper{0.1, static_cast<std::size_t>(state.range(0)), 50, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(train_gbdt(data, hyper));
}
BENCHMARK(BM_Gbdt)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
