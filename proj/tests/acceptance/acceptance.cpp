// Runs every acceptance criterion and prints one PASS/FAIL/SKIPPED line per
// criterion. Exit status is non-zero when any criterion fails.
//
// Criteria 11 and 12 read external data through a run configuration named
// by SOCDIM_ACCEPTANCE_CONFIG (paths.sentences, paths.annotations,
// paths.embeddings). Without it they are reported as SKIPPED (criterion 12
// still runs its synthetic part).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "socdim/analytics.hpp"
#include "socdim/annotations.hpp"
#include "socdim/config.hpp"
#include "socdim/embeddings.hpp"
#include "socdim/error.hpp"
#include "socdim/evaluate.hpp"
#include "socdim/folds.hpp"
#include "socdim/metrics.hpp"
#include "socdim/model.hpp"
#include "socdim/parallel.hpp"
#include "socdim/random.hpp"
#include "synthetic.hpp"

using namespace socdim;

namespace {

enum class Status { kPass, kFail, kSkipped };

struct Outcome {
  Status status = Status::kPass;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  Outcome done(std::string summary) const {
    if (!failed_) return {Status::kPass, std::move(summary)};
    std::string msg = summary;
    for (const auto& f : failures_) msg += "; " + f;
    return {Status::kFail, msg};
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::shared_ptr<const ResourceBundle> bundle() {
  static auto b = [] {
    const char* dir = std::getenv("SOCDIM_DATA_DIR");
    return std::make_shared<const ResourceBundle>(
        load_resources(dir ? std::filesystem::path(dir) : std::filesystem::path(SOCDIM_TEST_DATA_DIR)));
  }();
  return b;
}

// Grids used for the planted-signal runs. The full default grids are
// measured separately (see README); these keep the suite inside the runtime
// budget on a single core.
GridConfig acceptance_grids() {
  GridConfig g;
  g.logreg = {{0.3}, {0.001}, {100, 300}};
  g.gbdt = {{0.3}, {3}, {30, 60}, {1.0}};
  return g;
}

// --- 1 -------------------------------------------------------------------------

Outcome auc_oracle() {
  Checker c;
  Rng rng(101);
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  int ties = 0;
  for (int t = 0; t < 1000; ++t) {
    std::size_t n = 2 + rng.below(49);
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = rng.uniform() < 0.5 ? static_cast<double>(rng.below(5)) : rng.normal();
      y[i] = rng.uniform() < 0.5;
    }
    y[0] = 1;
    y[1] = 0;
    rng.shuffle(std::span<int>(y));
    std::set<double> distinct(s.begin(), s.end());
    ties += distinct.size() < n;
    worst = std::max(worst, std::fabs(auc(s, y) - oracle::auc_pairs(s, y)));
  }
  double elapsed = seconds_since(t0);
  c.expect(worst <= 1e-12, "max deviation " + fmt("%.3g", worst));
  c.expect(elapsed < 5.0, "runtime " + fmt("%.2f s", elapsed));
  c.expect(ties > 100, "too few instances with ties");
  return c.done("1000 instances, " + std::to_string(ties) + " with ties, max |diff| " +
                fmt("%.2g", worst) + ", " + fmt("%.3f s", elapsed));
}

// --- 2 -------------------------------------------------------------------------

Outcome gradient_check() {
  Checker c;
  Rng rng(202);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    Dataset data;
    data.cols = 1 + rng.below(8);
    std::size_t n = 10 + rng.below(60);
    std::vector<double> row(data.cols);
    for (std::size_t i = 0; i < n; ++i) {
      for (double& v : row) v = rng.normal() * 2;
      data.add(row, i % 2 == 0 ? 1 : static_cast<int>(rng.below(2)),
               1.0 + static_cast<double>(rng.below(4)));
    }
    data.y[1] = 0;
    LogisticObjective f(data, rng.uniform() * 0.1);
    std::vector<double> theta(f.dim());
    for (double& v : theta) v = rng.normal();
    auto g = f.gradient(theta);
    double diff = 0, norm_g = 0, norm_fd = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double h = 1e-5;
      auto up = theta, down = theta;
      up[i] += h;
      down[i] -= h;
      double fd = (f.loss(up) - f.loss(down)) / (2 * h);
      diff += (g[i] - fd) * (g[i] - fd);
      norm_g += g[i] * g[i];
      norm_fd += fd * fd;
    }
    double rel = std::sqrt(diff) / std::max({std::sqrt(norm_g), std::sqrt(norm_fd), 1e-12});
    worst = std::max(worst, rel);
  }
  c.expect(worst <= 1e-6, "relative error " + fmt("%.3g", worst));
  return c.done("100 instances, max relative error " + fmt("%.2g", worst));
}

// --- 3 -------------------------------------------------------------------------

Outcome ols_oracle() {
  Checker c;
  Rng rng(303);
  double worst = 0;
  auto track = [&](double a, double b) { worst = std::max(worst, std::fabs(a - b)); };
  for (int t = 0; t < 100; ++t) {
    std::size_t p = 1 + rng.below(4);
    std::size_t n = p + 3 + rng.below(25);
    bool standardized = t % 2 == 1;
    std::vector<Predictor> preds(p);
    for (std::size_t j = 0; j < p; ++j) preds[j].name = "x" + std::to_string(j);
    std::map<std::string, double> y;
    std::vector<std::string> regions;
    for (std::size_t i = 0; i < n; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "region%03zu", i);
      regions.push_back(name);
      double v = rng.normal();
      for (std::size_t j = 0; j < p; ++j) {
        double x = rng.normal() * (1 + j) + static_cast<double>(j);
        preds[j].values[name] = x;
        v += 0.7 * x;
      }
      y[name] = v * 3 + 10;
    }
    // The oracle sees the same rows, z-scored here when requested.
    std::vector<std::vector<double>> cols(p + 1);
    for (const auto& r : regions) {
      for (std::size_t j = 0; j < p; ++j) cols[j].push_back(preds[j].values[r]);
      cols[p].push_back(y[r]);
    }
    if (standardized) {
      for (auto& col : cols) {
        double m = mean(col), sd = sample_sd(col);
        for (double& v : col) v = (v - m) / sd;
      }
    }
    std::vector<std::vector<double>> x(n, std::vector<double>(p));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < p; ++j) x[i][j] = cols[j][i];
    }
    auto ref = oracle::ols(x, cols[p]);
    auto fit = ols_regress("y", y, preds, standardized);
    track(fit.intercept.beta, ref.beta[0]);
    track(fit.intercept.se, ref.se[0]);
    for (std::size_t j = 0; j < p; ++j) {
      track(fit.predictors[j].beta, ref.beta[j + 1]);
      track(fit.predictors[j].se, ref.se[j + 1]);
    }
    track(fit.adj_r2, ref.adj_r2);
    track(fit.r2, ref.r2);
    c.expect(fit.durbin_watson.has_value() && ref.dw.has_value(), "DW missing");
    if (fit.durbin_watson && ref.dw) track(*fit.durbin_watson, *ref.dw);
  }
  c.expect(worst <= 1e-8, "max deviation " + fmt("%.3g", worst));

  std::map<std::string, double> y;
  Predictor x{"x", {}};
  for (int i = 0; i < 12; ++i) {
    std::string r = "r" + std::to_string(i);
    x.values[r] = i;
    y[r] = 2.0 * i + 1.0;
  }
  auto perfect = ols_regress("y", y, {x}, false);
  c.expect(perfect.r2 == 1.0, "perfect-fit R2 " + fmt("%.17g", perfect.r2));
  std::vector<double> e{1, -1, 1, -1};
  auto dw = durbin_watson(e);
  c.expect(dw && *dw == 3.0, "DW of alternating residuals");
  return c.done("100 datasets, max |diff| " + fmt("%.2g", worst) + ", perfect fit R2 = " +
                fmt("%.17g", perfect.r2) + ", DW[1,-1,1,-1] = " + fmt("%g", dw.value_or(NAN)));
}

// --- 4 -------------------------------------------------------------------------

Outcome sentence_vector_properties() {
  Checker c;
  std::istringstream in("alpha 1 2 3\nbeta 3 0 -1\ngamma 2 2 2\n");
  auto store = parse_embeddings(in, 3);
  auto vec = [&](const std::string& text) { return sentence_vector(make_sentence(text).tokens, store); };

  auto mean_ab = vec("alpha beta");
  c.expect(mean_ab == std::vector<double>{2.0, 1.0, 1.0}, "hand mean of two words");
  auto mean_abg = vec("alpha beta gamma");
  c.expect(mean_abg == std::vector<double>{2.0, 4.0 / 3.0, 4.0 / 3.0}, "hand mean of three words");
  c.expect(vec("gamma beta alpha") == mean_abg, "permutation");
  c.expect(vec("beta, alpha!") == mean_ab, "punctuation");
  c.expect(vec("alpha unknownword beta") == mean_ab, "OOV skipped");
  c.expect(vec("alpha") == std::vector<double>{1.0, 2.0, 3.0}, "identity");
  bool threw = false;
  try {
    vec("nothing known here");
  } catch (const NoVectorError&) {
    threw = true;
  }
  c.expect(threw, "all-OOV sentence must have no vector");

  // Random stores: permutation invariance and the mean identity at scale.
  Rng rng(404);
  std::string body;
  for (int w = 0; w < 30; ++w) {
    body += "w" + std::to_string(w);
    for (int d = 0; d < 8; ++d) body += " " + std::to_string(static_cast<int>(rng.below(200)) - 100);
    body += "\n";
  }
  std::istringstream big_in(body);
  auto big = parse_embeddings(big_in, 8);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::string> words;
    for (std::size_t i = 0, n = 1 + rng.below(10); i < n; ++i) {
      words.push_back("w" + std::to_string(rng.below(30)));
    }
    auto join = [](const std::vector<std::string>& ws) {
      std::string s;
      for (const auto& w : ws) s += w + " ";
      return s;
    };
    auto v = sentence_vector(make_sentence(join(words)).tokens, big);
    std::vector<double> hand(8, 0.0);
    for (const auto& w : words) {
      for (int d = 0; d < 8; ++d) hand[d] += big.find(w)[d];
    }
    for (double& h : hand) h /= static_cast<double>(words.size());
    for (int d = 0; d < 8; ++d) c.expect(std::fabs(v[d] - hand[d]) <= 1e-12, "random hand mean");
    rng.shuffle(std::span<std::string>(words));
    auto shuffled = sentence_vector(make_sentence(join(words)).tokens, big);
    for (int d = 0; d < 8; ++d) c.expect(std::fabs(v[d] - shuffled[d]) <= 1e-12, "random permutation");
  }
  return c.done("toy and 100 random stores");
}

// --- 5 -------------------------------------------------------------------------

Outcome ngram_selection() {
  Checker c;
  // Small vocabulary so many n-grams clear the cutoff and several tie.
  const std::vector<std::string> vocab = {"red", "blue", "green", "cat", "dog",
                                          "runs", "sits", "fast", "slow", "home"};
  Rng rng(505);
  std::vector<Sentence> corpus;
  std::vector<std::vector<std::string>> words;
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> ws;
    for (std::size_t j = 0, n = 4 + rng.below(6); j < n; ++j) ws.push_back(vocab[rng.below(vocab.size())]);
    // Two words that always travel together tie on every count.
    if (i % 3 == 0) {
      ws.push_back("twin");
      ws.push_back("pair");
    }
    std::string text;
    for (const auto& w : ws) text += w + " ";
    corpus.push_back(make_sentence(text));
    words.push_back(ws);
  }
  std::vector<Sentence> positives;
  std::vector<std::vector<std::string>> positive_words;
  for (int i = 0; i < 50; i += 2) {
    positives.push_back(corpus[i]);
    positive_words.push_back(words[i]);
  }
  std::size_t compared = 0;
  for (std::size_t k : {5, 10, 100}) {
    NgramOptions opt{10, k, 0.01};
    auto vocab_sel = select_ngrams(positives, corpus, Dimension::kFun, opt);
    auto ref = oracle::xi_ranking(positive_words, words, 10, k, 0.01);
    c.expect(vocab_sel.entries().size() == ref.size(), "k=" + std::to_string(k) + " size");
    for (std::size_t i = 0; i < std::min(ref.size(), vocab_sel.entries().size()); ++i) {
      c.expect(vocab_sel.entries()[i].ngram == ref[i].first, "rank " + std::to_string(i));
      c.expect(std::fabs(vocab_sel.entries()[i].xi - ref[i].second) <= 1e-12, "xi " + ref[i].first);
      ++compared;
    }
  }
  // The tie is present and ordered lexicographically, and rare n-grams are out.
  auto full = select_ngrams(positives, corpus, Dimension::kFun, {10, 1000, 0.01});
  auto pos_of = [&](const std::string& g) -> std::ptrdiff_t {
    auto it = std::find_if(full.entries().begin(), full.entries().end(),
                           [&](const NgramEntry& e) { return e.ngram == g; });
    return it == full.entries().end() ? -1 : it - full.entries().begin();
  };
  c.expect(pos_of("pair") >= 0 && pos_of("pair") + 1 == pos_of("twin"), "tie order pair < twin");
  std::map<std::string, int> counts;
  for (const auto& s : corpus) {
    for (const auto& g : extract_ngrams(s.tokens)) ++counts[g];
  }
  std::size_t frequent = 0;
  for (const auto& [g, n] : counts) {
    frequent += n >= 10;
    if (n < 10) c.expect(pos_of(g) < 0, "below-cutoff n-gram selected: " + g);
  }
  c.expect(full.entries().size() == frequent, "every frequent n-gram ranked");
  c.expect(frequent < counts.size(), "cutoff removes nothing");
  return c.done(std::to_string(compared) + " ranks compared, " + std::to_string(frequent) + " of " +
                std::to_string(counts.size()) + " n-grams pass min_count 10");
}

// --- 6 -------------------------------------------------------------------------

std::string report_bytes(const EvaluationReport& r) {
  std::string out;
  char buf[64];
  for (std::size_t f = 0; f < r.fold_auc.size(); ++f) {
    std::snprintf(buf, sizeof buf, "%.17g", r.fold_auc[f]);
    out += buf;
    for (const auto& [k, v] : r.fold_hyper[f]) {
      std::snprintf(buf, sizeof buf, " %s=%.17g", k.c_str(), v);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

Outcome protocol_fidelity() {
  Checker c;
  std::vector<std::size_t> pos(200), neg(1800);
  std::iota(pos.begin(), pos.end(), 0);
  std::iota(neg.begin(), neg.end(), 200);
  auto plan = make_folds(pos, neg, 10, 606);
  std::vector<int> label(2000, 0);
  std::fill(label.begin(), label.begin() + 200, 1);
  auto count_pos = [&](const std::vector<std::size_t>& ids) {
    return static_cast<std::size_t>(
        std::count_if(ids.begin(), ids.end(), [&](std::size_t i) { return label[i] == 1; }));
  };
  std::set<std::size_t> tested;
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    const auto& fold = plan.folds[f];
    c.expect(count_pos(fold.train) == 160 && fold.train.size() == 1600, "train 80% per class");
    c.expect(count_pos(fold.tune) == 20 && fold.tune.size() == 200, "tune 10% per class");
    c.expect(count_pos(fold.test) == 20 && fold.test.size() == 200, "test 10% per class");
    std::set<std::size_t> all(fold.train.begin(), fold.train.end());
    for (auto i : fold.tune) c.expect(all.insert(i).second, "tune overlaps");
    for (auto i : fold.test) c.expect(all.insert(i).second, "test overlaps");
    c.expect(all.size() == 2000, "fold misses ids");
    for (auto i : fold.test) c.expect(tested.insert(i).second, "id tested twice");
    for (const auto* split : {&fold.train, &fold.tune, &fold.test}) {
      std::vector<int> labels;
      for (auto i : *split) labels.push_back(label[i]);
      auto over = oversample(*split, labels, derive_seed(606, {f}));
      std::size_t p = count_pos(over);
      c.expect(p * 2 == over.size(), "oversampled split not balanced");
      c.expect(std::equal(split->begin(), split->end(), over.begin()), "originals dropped");
    }
  }
  c.expect(tested.size() == 2000, "test folds do not cover the data");

  // Byte-identical reruns of the full evaluation, also across worker counts.
  auto extractor = std::make_shared<FeatureExtractor>(bundle(), FeatureConfig{});
  auto corpus = synth::planted_corpus(600, 0.8, 66);
  auto table1 = build_feature_table(*extractor, corpus.sentences, 1);
  auto table2 = build_feature_table(*extractor, corpus.sentences, 2);
  c.expect(table1.base == table2.base && table1.ngrams == table2.ngrams, "feature table differs");
  EvaluateOptions options;
  options.seed = 6;
  options.ngrams.min_count = 3;
  options.grids = acceptance_grids();
  std::string first_logreg, first_gbdt;
  for (int run = 0; run < 2; ++run) {
    const auto& table = run == 0 ? table1 : table2;
    LabeledData data{&corpus.sentences, &table, corpus.positives(Dimension::kTrust),
                     corpus.negatives(Dimension::kTrust)};
    options.workers = 1 + run;
    auto lr = report_bytes(evaluate(Dimension::kTrust, ModelKind::kLogreg, data, extractor.get(), options));
    auto gb = report_bytes(evaluate(Dimension::kTrust, ModelKind::kGbdt, data, extractor.get(), options));
    auto model = model_to_json(train_model(Dimension::kTrust, ModelKind::kGbdt, data, extractor.get(), options));
    if (run == 0) {
      first_logreg = lr + gb + model;
    } else {
      c.expect(first_logreg == lr + gb + model, "rerun output differs");
    }
  }
  return c.done("10 folds over 200/1800, balanced oversampling, identical reruns (" +
                std::to_string(first_logreg.size()) + " bytes)");
}

// --- 7 -------------------------------------------------------------------------

struct PlantedRun {
  synth::PlantedCorpus corpus;
  std::shared_ptr<FeatureExtractor> extractor;
  FeatureTable table;
};

const PlantedRun& planted() {
  static PlantedRun run = [] {
    PlantedRun r;
    r.corpus = synth::planted_corpus(2000, 0.8, 707);
    r.extractor = std::make_shared<FeatureExtractor>(bundle(), FeatureConfig{});
    r.table = build_feature_table(*r.extractor, r.corpus.sentences);
    return r;
  }();
  return run;
}

Outcome planted_signal() {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  const auto& run = planted();
  EvaluateOptions options;
  options.k = 10;
  options.seed = 7;
  options.grids = acceptance_grids();
  double lowest = 1.0;
  std::string lowest_at;
  for (Dimension d : kAllDimensions) {
    LabeledData data{&run.corpus.sentences, &run.table, run.corpus.positives(d), run.corpus.negatives(d)};
    for (ModelKind kind : {ModelKind::kLogreg, ModelKind::kGbdt}) {
      auto r = evaluate(d, kind, data, run.extractor.get(), options);
      std::string where = std::string(to_string(d)) + "/" + std::string(to_string(kind));
      c.expect(r.mean_auc >= 0.90, where + " mean AUC " + fmt("%.3f", r.mean_auc));
      if (r.mean_auc < lowest) {
        lowest = r.mean_auc;
        lowest_at = where;
      }
    }
  }
  double elapsed = seconds_since(t0);
  c.expect(elapsed < 120.0, "runtime " + fmt("%.1f s", elapsed));
  return c.done("20 evaluations, lowest mean AUC " + fmt("%.3f", lowest) + " (" + lowest_at + "), " +
                fmt("%.1f s", elapsed));
}

// --- 8 -------------------------------------------------------------------------

Outcome null_baseline() {
  Checker c;
  const auto& run = planted();
  // Labels drawn independently of the text: 400 positives, 1600 negatives.
  std::vector<std::size_t> ids(run.corpus.sentences.size());
  std::iota(ids.begin(), ids.end(), 0);
  Rng rng(808);
  rng.shuffle(std::span<std::size_t>(ids));
  LabeledData data{&run.corpus.sentences, &run.table, {ids.begin(), ids.begin() + 400},
                   {ids.begin() + 400, ids.end()}};
  std::sort(data.positives.begin(), data.positives.end());
  std::sort(data.negatives.begin(), data.negatives.end());
  EvaluateOptions options;
  options.seed = 8;
  options.grids = acceptance_grids();
  std::string summary;
  for (ModelKind kind : {ModelKind::kLogreg, ModelKind::kGbdt}) {
    auto r = evaluate(Dimension::kSupport, kind, data, run.extractor.get(), options);
    c.expect(r.mean_auc >= 0.40 && r.mean_auc <= 0.60,
             std::string(to_string(kind)) + " mean AUC " + fmt("%.3f", r.mean_auc));
    summary += std::string(to_string(kind)) + " " + fmt("%.3f", r.mean_auc) + " ";
  }
  return c.done("permuted labels, 400/1600: " + summary);
}

// --- 9, 10 -----------------------------------------------------------------------

const Model& planted_model(Dimension d) {
  static std::map<Dimension, Model> models;
  auto it = models.find(d);
  if (it != models.end()) return it->second;
  const auto& run = planted();
  EvaluateOptions options;
  options.seed = 9;
  options.grids = acceptance_grids();
  LabeledData data{&run.corpus.sentences, &run.table, run.corpus.positives(d), run.corpus.negatives(d)};
  return models.emplace(d, train_model(d, ModelKind::kLogreg, data, run.extractor.get(), options))
      .first->second;
}

std::vector<TextLabeling> label_all(std::span<const Message> messages,
                                    std::span<const DimensionScorer> scorers) {
  std::vector<TextLabeling> out;
  for (const auto& m : messages) out.push_back(label_text(m, scorers));
  return out;
}

// Flags a sentence iff it contains one of the dimension's descriptive
// keywords, so the flagged rate equals the planted rate exactly.
DimensionScorer keyword_scorer(Dimension d) {
  return {d, [d](const Sentence& s) {
            auto keys = dimension_keywords(d);
            for (const auto& t : s.tokens) {
              if (std::find(keys.begin(), keys.end(), t.surface) != keys.end()) return 1.0;
            }
            return 0.0;
          }};
}

std::size_t argmax_week(const TimelineSeries& s) {
  std::size_t best = 0;
  for (std::size_t w = 0; w < s.buckets.size(); ++w) {
    if (s.buckets[w].zscore > s.buckets[best].zscore) best = w;
  }
  return best;
}

Outcome timeline_burst() {
  Checker c;
  const auto& run = planted();
  const Dimension d = Dimension::kSupport;
  std::vector<DimensionScorer> trained{make_scorer(planted_model(d), run.extractor.get(), nullptr)};
  std::vector<DimensionScorer> exact{keyword_scorer(d)};
  const std::size_t burst_week = 7;
  std::vector<double> rates(12, 0.1);
  rates[burst_week] = 0.4;
  auto burst = synth::weekly_stream(d, rates, 50, 909);
  std::string summary;
  for (const auto* scorers : {&trained, &exact}) {
    const char* name = scorers == &trained ? "trained" : "keyword";
    auto series = timeline(burst, label_all(burst, *scorers), d);
    c.expect(series.buckets.size() == 12, std::string(name) + ": expected 12 weekly buckets");
    std::size_t argmax = argmax_week(series);
    double peak = series.buckets.empty() ? 0 : series.buckets[argmax].zscore;
    c.expect(argmax == burst_week, std::string(name) + ": argmax at week " + std::to_string(argmax));
    c.expect(peak >= 2.0, std::string(name) + ": peak z " + fmt("%.3f", peak));
    summary += std::string(name) + " burst week " + std::to_string(argmax) + " z " + fmt("%.3f", peak) + ", ";
  }

  auto flat = synth::weekly_stream(d, std::vector<double>(12, 0.2), 50, 910);
  auto flat_series = timeline(flat, label_all(flat, exact), d);
  bool all_zero = std::all_of(flat_series.buckets.begin(), flat_series.buckets.end(),
                              [](const TimelineBucket& b) { return b.zscore == 0.0; });
  c.expect(flat_series.buckets.size() == 12 && all_zero, "constant-rate stream has non-zero z-scores");
  c.expect(flat_series.degenerate, "constant-rate stream not flagged degenerate");
  // Reported only: the trained model's own recall noise on the same stream.
  auto noisy = timeline(flat, label_all(flat, trained), d);
  double lo = 1, hi = 0;
  for (const auto& b : noisy.buckets) {
    lo = std::min(lo, b.f);
    hi = std::max(hi, b.f);
  }
  return c.done(summary + "constant stream all-zero (trained model weekly f in [" + fmt("%.2f", lo) +
                ", " + fmt("%.2f", hi) + "])");
}

Outcome relationship_rule() {
  Checker c;
  const auto& run = planted();
  std::vector<DimensionScorer> scorers;
  for (Dimension d : kAllDimensions) scorers.push_back(make_scorer(planted_model(d), run.extractor.get(), nullptr));

  auto fixture = [](std::size_t total, std::size_t planted_count, std::uint64_t seed) {
    std::vector<Message> ms;
    for (std::size_t i = 0; i < total; ++i) {
      Message m;
      m.id = "m" + std::to_string(i);
      m.author = i % 2 ? "alice" : "bob";
      m.recipient = i % 2 ? "bob" : "alice";
      m.text = i < planted_count ? synth::topical_text(Dimension::kConflict, seed + i)
                                 : synth::neutral_text(seed + i);
      ms.push_back(std::move(m));
    }
    return ms;
  };
  auto label_pair = [&](const std::vector<Message>& ms) {
    auto pairs = group_by_pair(ms);
    c.expect(pairs.size() == 1, "fixture is one undirected pair");
    std::vector<TextLabeling> ls;
    for (auto i : pairs.begin()->second) ls.push_back(label_text(ms[i], scorers));
    return relationship_label(ls);
  };
  auto big = label_pair(fixture(25, 15, 1000));
  c.expect(big.dimension == Dimension::kConflict,
           "25-message fixture gave " + (big.dimension ? std::string(to_string(*big.dimension)) : big.reason));
  auto small = label_pair(fixture(19, 15, 2000));
  c.expect(!small.dimension, "19-message fixture did not abstain");
  return c.done("25 messages -> " + (big.dimension ? std::string(to_string(*big.dimension)) : "none") +
                " (" + std::to_string(big.counts[index_of(Dimension::kConflict)]) +
                " conflict), 19 messages -> abstain");
}

// --- 11, 12 ----------------------------------------------------------------------

std::optional<RunConfig> external_config() {
  const char* path = std::getenv("SOCDIM_ACCEPTANCE_CONFIG");
  if (!path || !*path) return std::nullopt;
  return load_run_config(path);
}

struct ExternalLabels {
  std::vector<Sentence> sentences;
  std::map<std::string, std::size_t> index;
  TrainingSets sets;
};

ExternalLabels load_external_labels(const RunConfig& cfg) {
  ExternalLabels out;
  auto corpus = load_messages(cfg.sentences, CorpusFormat::kCommentsJsonl);
  for (const auto& m : corpus.messages) {
    out.index[m.id] = out.sentences.size();
    out.sentences.push_back(make_sentence(m.text, out.sentences.size()));
  }
  auto annotations = load_annotations(cfg.annotations);
  auto gated = apply_gold_gate(annotations.records, cfg.fail_threshold);
  out.sets = build_training_sets(consensus_labels(gated.kept, cfg.quorum), cfg.single_vote_negative);
  return out;
}

std::vector<std::size_t> to_indices(const std::vector<std::string>& ids, const ExternalLabels& labels) {
  std::vector<std::size_t> out;
  for (const auto& id : ids) {
    auto it = labels.index.find(id);
    if (it != labels.index.end()) out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome released_dataset() {
  auto cfg = external_config();
  if (!cfg || cfg->sentences.empty() || cfg->annotations.empty() || cfg->embeddings.empty()) {
    return {Status::kSkipped, "released labeled dataset and embeddings not configured"};
  }
  Checker c;
  auto labels = load_external_labels(*cfg);
  auto store = load_embeddings(cfg->embeddings, cfg->embedding_dim);
  auto extractor = std::make_shared<FeatureExtractor>(bundle(), cfg->features);
  auto table = build_feature_table(*extractor, labels.sentences, cfg->workers ? cfg->workers : default_workers());
  EvaluateOptions options;
  options.k = cfg->folds;
  options.seed = cfg->seed;
  options.grids = cfg->grids;
  options.ngrams = cfg->ngrams;
  options.store = &store;
  options.workers = cfg->workers ? cfg->workers : default_workers();

  std::string summary;
  std::vector<std::pair<double, Dimension>> ranking;
  for (Dimension d : kAllDimensions) {
    const auto& set = labels.sets[index_of(d)];
    LabeledData data{&labels.sentences, &table, to_indices(set.positives, labels),
                     to_indices(set.negatives, labels)};
    if (d == Dimension::kFun || d == Dimension::kStatus) {
      auto r = evaluate(d, ModelKind::kEmbeddingDistance, data, nullptr, options);
      double target = d == Dimension::kFun ? 0.83 : 0.78;
      c.expect(std::fabs(r.mean_auc - target) <= 0.05,
               std::string(to_string(d)) + " embedding AUC " + fmt("%.3f", r.mean_auc));
      summary += std::string(to_string(d)) + " embedding " + fmt("%.3f", r.mean_auc) + ", ";
    }
    auto r = evaluate(d, ModelKind::kGbdt, data, extractor.get(), options);
    ranking.emplace_back(r.mean_auc, d);
  }
  std::sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  auto rank_of = [&](Dimension d) {
    return std::find_if(ranking.begin(), ranking.end(), [&](const auto& p) { return p.second == d; }) -
           ranking.begin();
  };
  c.expect(rank_of(Dimension::kRomance) < 3, "romance not in top three");
  c.expect(rank_of(Dimension::kFun) < 3, "fun not in top three");
  c.expect(rank_of(Dimension::kPower) >= 6, "power not in bottom four");
  c.expect(rank_of(Dimension::kIdentity) >= 6, "identity not in bottom four");
  summary += "gbdt order:";
  for (const auto& [a, d] : ranking) summary += " " + std::string(to_string(d)) + "=" + fmt("%.2f", a);
  return c.done(summary);
}

Outcome consensus_and_gating() {
  Checker c;
  auto rec = [](std::string s, std::string a, DimensionSet labels, bool other = false) {
    AnnotationRecord r;
    r.sentence_id = std::move(s);
    r.annotator_id = std::move(a);
    r.labels = labels;
    r.other_flag = other;
    return r;
  };
  using D = Dimension;
  auto q1 = consensus_labels({rec("s", "a", {D::kSupport}), rec("s", "b", {D::kSupport, D::kSimilarity}),
                              rec("s", "c", {}, true)});
  c.expect(q1.size() == 1 && q1[0].positive_dims == DimensionSet{D::kSupport}, "support quorum");
  auto q2 = consensus_labels({rec("s", "a", {D::kFun}), rec("s", "b", {D::kConflict}), rec("s", "c", {D::kStatus})});
  c.expect(q2.size() == 1 && q2[0].positive_dims.empty(), "no agreeing pair");
  auto q3 = consensus_labels({rec("s", "a", {D::kRomance}), rec("s", "b", {D::kRomance}), rec("s", "c", {D::kRomance})});
  c.expect(q3.size() == 1 && q3[0].positive_dims == DimensionSet{D::kRomance}, "unanimous");

  auto golds = [&](const std::string& who, int correct) {
    std::vector<AnnotationRecord> out;
    for (int i = 0; i < 10; ++i) {
      auto r = rec("g" + std::to_string(i), who, i < correct ? DimensionSet{D::kFun} : DimensionSet{D::kPower});
      r.is_gold = true;
      r.gold_labels = {D::kFun};
      out.push_back(r);
    }
    out.push_back(rec("s1", who, {D::kTrust}));
    return out;
  };
  auto banned = apply_gold_gate(golds("x", 6));
  c.expect(banned.banned.count("x") == 1 && banned.kept.empty(), "6/10 correct must be banned");
  auto kept = apply_gold_gate(golds("y", 7));
  c.expect(kept.banned.empty() && kept.kept.size() == 11, "7/10 correct must be kept");
  auto fresh = apply_gold_gate({rec("s1", "z", {D::kTrust})});
  c.expect(fresh.banned.empty() && fresh.kept.size() == 1, "annotator without golds kept");
  std::string summary = "synthetic quorum and gate oracles hold";

  auto cfg = external_config();
  if (!cfg || cfg->annotations.empty()) {
    auto out = c.done(summary);
    if (out.status == Status::kPass) {
      return {Status::kSkipped, summary + "; released annotation export not configured"};
    }
    return out;
  }
  auto annotations = load_annotations(cfg->annotations);
  auto gated = apply_gold_gate(annotations.records, cfg->fail_threshold);
  auto all = label_distribution(consensus_labels(gated.kept, cfg->quorum)).at("all");
  const double expected[4] = {41, 53, 5, 1};
  std::string got;
  for (int b = 0; b < 4; ++b) {
    double pct = std::round(all[b] * 100.0);
    c.expect(pct == expected[b], "bucket " + std::to_string(b) + " " + fmt("%.0f%%", pct));
    got += fmt("%.0f%% ", pct);
  }
  return c.done(summary + "; released export: " + got);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "auc-oracle", auc_oracle},
      {2, "gradient-check", gradient_check},
      {3, "ols-oracle", ols_oracle},
      {4, "sentence-vector", sentence_vector_properties},
      {5, "ngram-selection", ngram_selection},
      {6, "protocol-fidelity", protocol_fidelity},
      {7, "planted-signal", planted_signal},
      {8, "null-baseline", null_baseline},
      {9, "timeline", timeline_burst},
      {10, "relationship-rule", relationship_rule},
      {11, "released-dataset", released_dataset},
      {12, "consensus-gating", consensus_and_gating},
  };
  int failures = 0;
  for (const auto& crit : criteria) {
    Outcome o;
    try {
      o = crit.run();
    } catch (const std::exception& e) {
      o = {Status::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::kPass ? "PASS" : o.status == Status::kFail ? "FAIL" : "SKIPPED";
    failures += o.status == Status::kFail;
    std::printf("criterion %2d %-18s %s  %s\n", crit.id, crit.name, tag, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
