#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>

namespace socdim {

// splitmix64 generator. Used instead of <random> engines + distributions so
// that seeded runs are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Uniform integer in [0, bound), bound > 0. Rejection sampling, unbiased.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Standard normal (Box-Muller).
  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Mixes a parent seed with a list of stream ids into an independent seed.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

}  // namespace socdim
