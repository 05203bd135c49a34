#pragma once

#include <cstdint>
#include <random>

#include "proxydata/types.hpp"

namespace proxydata {

/// Seeded generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Integer and real draws are mapped here rather than through
/// <random> distributions, which are implementation-defined.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform real in the open interval (0, 1), 53-bit resolution.
  double open01();

 private:
  std::mt19937_64 engine_;
};

/// Independent stream seed derived from (seed, stream) with splitmix64.
Seed derive_seed(Seed seed, std::uint64_t stream) noexcept;

}  // namespace proxydata
