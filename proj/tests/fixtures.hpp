#pragma once

#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "proxydata/rng.hpp"
#include "proxydata/types.hpp"

namespace proxydata::testing {

/// Single-class table from (id, entropy) pairs.
inline StatsTable stats_from(std::initializer_list<std::pair<ExampleId, double>> rows,
                             std::size_t classes = 1) {
  std::vector<ExampleStat> out;
  for (const auto& [id, e] : rows) {
    ExampleStat s;
    s.id = id;
    s.entropy = e;
    out.push_back(s);
  }
  return StatsTable(std::move(out), classes);
}

/// Table with ids 0..n-1 and the given entropies.
inline StatsTable stats_from_entropies(const std::vector<double>& entropies) {
  std::vector<ExampleStat> out(entropies.size());
  for (std::size_t i = 0; i < entropies.size(); ++i) {
    out[i].id = i;
    out[i].entropy = entropies[i];
  }
  return StatsTable(std::move(out), 1);
}

/// n examples over `classes` labels with log10-uniform entropies in
/// [1e-4, 1].
inline StatsTable random_stats(std::size_t n, std::size_t classes, Seed seed) {
  Rng rng(seed);
  std::vector<ExampleStat> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].id = i * 3 + 1;
    out[i].label = static_cast<ClassLabel>(rng.below(classes));
    out[i].entropy = std::pow(10.0, -4.0 * rng.open01());
  }
  return StatsTable(std::move(out), classes);
}

}  // namespace proxydata::testing
