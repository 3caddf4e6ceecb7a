#pragma once

// Reference implementations used only by tests. Each one is written the slow,
// obvious way and shares no code with the library.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

// Pair counting: (#pos > neg) + 0.5 (#pos == neg), over #pos * #neg.
double auc_pairs(const std::vector<double>& scores, const std::vector<int>& labels);

struct OlsFit {
  std::vector<double> beta;  // intercept first
  std::vector<double> se;
  double r2 = 0;
  double adj_r2 = 0;
  std::optional<double> dw;
};

// Normal equations solved by Gauss-Jordan elimination in long double. Rows of
// x hold predictors only; an intercept column is added.
OlsFit ols(const std::vector<std::vector<double>>& x, const std::vector<double>& y);

// Ranks every unigram and bigram by the smoothed log-odds score, counting
// through std::map. Returns (ngram, xi) pairs, best first.
std::vector<std::pair<std::string, double>> xi_ranking(
    const std::vector<std::vector<std::string>>& positive_words,
    const std::vector<std::vector<std::string>>& corpus_words, std::size_t min_count,
    std::size_t k, double alpha);

// Lowest-objective single split of one feature for one Newton step from
// margin `base`, trying the midpoint of every pair of adjacent distinct
// values. Leaf values are unscaled by any learning rate.
struct Stump {
  double threshold = 0;
  double left_value = 0;
  double right_value = 0;
};
Stump best_stump(const std::vector<double>& x, const std::vector<int>& y, double base,
                 double lambda);

}  // namespace oracle
