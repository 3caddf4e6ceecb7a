#include "socdim/folds.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "socdim/error.hpp"
#include "socdim/random.hpp"

namespace socdim {
namespace {

std::vector<std::vector<std::size_t>> chunks(std::span<const std::size_t> ids, std::size_t k,
                                             Rng& rng) {
  std::vector<std::size_t> shuffled(ids.begin(), ids.end());
  rng.shuffle(std::span<std::size_t>(shuffled));
  std::vector<std::vector<std::size_t>> out(k);
  std::size_t base = shuffled.size() / k, extra = shuffled.size() % k, pos = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t len = base + (c < extra ? 1 : 0);
    out[c].assign(shuffled.begin() + static_cast<std::ptrdiff_t>(pos),
                  shuffled.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return out;
}

}  // namespace

FoldPlan make_folds(std::span<const std::size_t> positives, std::span<const std::size_t> negatives,
                    std::size_t k, std::uint64_t seed, std::string_view what) {
  std::string prefix = what.empty() ? "" : std::string(what) + ": ";
  if (k < 2) throw InvalidArgument(prefix + "cross-validation needs k >= 2");
  // With k = 2 the tune and train chunks would coincide.
  if (k < 3) throw InvalidArgument(prefix + "k must be at least 3 to hold out tune and test");
  if (positives.size() < k || negatives.size() < k) {
    throw InvalidArgument(prefix + "need at least " + std::to_string(k) +
                          " samples per class, have " + std::to_string(positives.size()) +
                          " positive and " + std::to_string(negatives.size()) + " negative");
  }
  Rng pos_rng(derive_seed(seed, {1})), neg_rng(derive_seed(seed, {2}));
  auto p = chunks(positives, k, pos_rng);
  auto n = chunks(negatives, k, neg_rng);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  for (std::size_t f = 0; f < k; ++f) {
    Fold fold;
    std::size_t tune = (f + 1) % k;
    for (std::size_t c = 0; c < k; ++c) {
      auto& dst = c == f ? fold.test : c == tune ? fold.tune : fold.train;
      dst.insert(dst.end(), p[c].begin(), p[c].end());
      dst.insert(dst.end(), n[c].begin(), n[c].end());
    }
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

std::vector<std::size_t> oversample(std::span<const std::size_t> ids, std::span<const int> labels,
                                    std::uint64_t seed) {
  if (ids.size() != labels.size()) throw InvalidArgument("oversample: input lengths differ");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < ids.size(); ++i) (labels[i] ? pos : neg).push_back(ids[i]);
  if (pos.empty() || neg.empty()) throw InvalidArgument("oversample: a class is empty");

  std::vector<std::size_t> out(ids.begin(), ids.end());
  const auto& minority = pos.size() < neg.size() ? pos : neg;
  std::size_t missing = std::max(pos.size(), neg.size()) - minority.size();
  Rng rng(seed);
  for (std::size_t i = 0; i < missing; ++i) out.push_back(minority[rng.below(minority.size())]);
  return out;
}

std::vector<std::pair<std::size_t, double>> multiplicities(std::span<const std::size_t> ids) {
  std::map<std::size_t, double> counts;
  for (auto id : ids) counts[id] += 1.0;
  return {counts.begin(), counts.end()};
}

}  // namespace socdim
