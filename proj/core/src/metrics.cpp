#include "socdim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "socdim/error.hpp"

namespace socdim {

double auc(std::span<const double> scores, std::span<const int> labels) {
  std::vector<double> ones(scores.size(), 1.0);
  return auc(scores, labels, ones);
}

double auc(std::span<const double> scores, std::span<const int> labels,
           std::span<const double> weights) {
  if (scores.size() != labels.size() || scores.size() != weights.size()) {
    throw InvalidArgument("auc: input lengths differ");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Walk tie groups in ascending score order. Each positive beats every
  // negative seen in earlier groups and half-beats those in its own group.
  double neg_below = 0.0, total_pos = 0.0, total_neg = 0.0, wins = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    double pos = 0.0, neg = 0.0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      std::size_t s = order[j];
      if (std::isnan(scores[s])) throw InvalidArgument("auc: NaN score");
      (labels[s] ? pos : neg) += weights[s];
      ++j;
    }
    wins += pos * (neg_below + 0.5 * neg);
    neg_below += neg;
    total_pos += pos;
    total_neg += neg;
    i = j;
  }
  if (total_pos <= 0.0 || total_neg <= 0.0) {
    throw InvalidArgument("auc: both classes must be present");
  }
  return wins / (total_pos * total_neg);
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

namespace {
double squared_deviation(std::span<const double> xs) {
  double m = mean(xs), s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s;
}
}  // namespace

double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  return std::sqrt(squared_deviation(xs) / static_cast<double>(xs.size() - 1));
}

double population_sd(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::sqrt(squared_deviation(xs) / static_cast<double>(xs.size()));
}

EffectSizeReport effect_sizes(std::span<const std::string> names,
                              const std::vector<std::vector<double>>& positives,
                              const std::vector<std::vector<double>>& negatives,
                              double threshold) {
  if (positives.size() < 2 || negatives.size() < 2) {
    throw InvalidArgument("effect_sizes: need at least two samples per class");
  }
  EffectSizeReport report;
  const double n1 = static_cast<double>(positives.size());
  const double n2 = static_cast<double>(negatives.size());
  std::vector<double> a(positives.size()), b(negatives.size());
  for (std::size_t f = 0; f < names.size(); ++f) {
    for (std::size_t i = 0; i < positives.size(); ++i) a[i] = positives[i].at(f);
    for (std::size_t i = 0; i < negatives.size(); ++i) b[i] = negatives[i].at(f);
    double s1 = sample_sd(a), s2 = sample_sd(b);
    double pooled = std::sqrt(((n1 - 1) * s1 * s1 + (n2 - 1) * s2 * s2) / (n1 + n2 - 2));
    if (pooled == 0.0) {
      report.degenerate.push_back(names[f]);
      continue;
    }
    double d = (mean(a) - mean(b)) / pooled;
    if (std::fabs(d) > threshold) report.effects.push_back({names[f], d});
  }
  std::stable_sort(report.effects.begin(), report.effects.end(),
                   [](const EffectSize& x, const EffectSize& y) {
                     return std::fabs(x.d) > std::fabs(y.d);
                   });
  return report;
}

}  // namespace socdim
