#include "socdim/random.hpp"

#include <cmath>
#include <numbers>

namespace socdim {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  Rng rng(seed);
  std::uint64_t h = rng.next();
  for (std::uint64_t s : stream) {
    Rng mix(h ^ (s * 0xd6e8feb86659fd93ULL + 0x632be59bd9b4e019ULL));
    h = mix.next();
  }
  return h;
}

}  // namespace socdim
