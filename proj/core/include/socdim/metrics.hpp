#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace socdim {

// Mann-Whitney estimate of P(score+ > score-) + 0.5 P(score+ = score-).
// Labels are 0/1. Throws InvalidArgument unless both classes are present.
double auc(std::span<const double> scores, std::span<const int> labels);

// Same statistic where sample i stands for weights[i] copies of itself.
double auc(std::span<const double> scores, std::span<const int> labels,
           std::span<const double> weights);

double mean(std::span<const double> xs);
// Sample (n-1) standard deviation; 0 for fewer than two values.
double sample_sd(std::span<const double> xs);
// Population (n) standard deviation.
double population_sd(std::span<const double> xs);

struct EffectSize {
  std::string feature;
  double d = 0.0;
};

struct EffectSizeReport {
  std::vector<EffectSize> effects;     // |d| > threshold, by |d| descending
  std::vector<std::string> degenerate;  // zero pooled SD
};

// Cohen's d with pooled SD per column. Rows of `positives` and `negatives`
// hold one value per name.
EffectSizeReport effect_sizes(std::span<const std::string> names,
                              const std::vector<std::vector<double>>& positives,
                              const std::vector<std::vector<double>>& negatives,
                              double threshold = 0.4);

}  // namespace socdim
