#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace socdim {

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> tune;
  std::vector<std::size_t> test;
};

struct FoldPlan {
  std::size_t k = 10;
  std::uint64_t seed = 0;
  std::vector<Fold> folds;
};

// Each class is shuffled and cut into k near-equal chunks. Fold f tests on
// chunk f, tunes on chunk (f+1) mod k and trains on the rest, which gives
// 80/10/10 per class for k = 10. `what` names the task in error messages.
FoldPlan make_folds(std::span<const std::size_t> positives,
                    std::span<const std::size_t> negatives, std::size_t k, std::uint64_t seed,
                    std::string_view what = "");

// Every input id once, followed by minority-class ids drawn uniformly with
// replacement until both classes have the same count.
std::vector<std::size_t> oversample(std::span<const std::size_t> ids, std::span<const int> labels,
                                    std::uint64_t seed);

// Collapses repeated ids into (id, multiplicity), sorted by id.
std::vector<std::pair<std::size_t, double>> multiplicities(std::span<const std::size_t> ids);

}  // namespace socdim
