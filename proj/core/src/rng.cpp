#include "proxydata/rng.hpp"

namespace proxydata {

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection on the top of the range keeps every residue equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::open01() {
  // (m + 0.5) / 2^53 for m in [0, 2^53): never 0, never 1.
  const std::uint64_t m = engine_() >> 11;
  return (static_cast<double>(m) + 0.5) * 0x1.0p-53;
}

Seed derive_seed(Seed seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace proxydata
