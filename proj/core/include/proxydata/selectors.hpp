#pragma once

// Proxy-data selection methods. Every selector returns exactly k distinct
// ids of the source table and is deterministic given its inputs and seed.
//
// Tie rules:
//   entropy ranking       ascending id
//   forgetting ranking    higher entropy first, then ascending id
//   k-center argmax       ascending id

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "proxydata/histogram.hpp"
#include "proxydata/types.hpp"

namespace proxydata {

enum class Method {
  kRandom,
  kEntropyTop,
  kEntropyBottom,
  kForgetting,
  kKCenter,
  kTail,
  kProbabilistic,
};

std::string_view to_string(Method method) noexcept;
/// Accepts random|entropy-top|entropy-bottom|forgetting|kcenter|tail|prob.
Method parse_method(std::string_view text);
/// "random, entropy-top, ..." for usage messages.
std::string_view method_names() noexcept;

inline constexpr double kDefaultBeta = 0.9;

/// A selection method plus the parameters it needs.
struct MethodSpec {
  Method method = Method::kRandom;
  double beta = kDefaultBeta;                  // tail
  WeightScheme weight = WeightScheme::kW1;     // prob
  double bin_width = kDefaultBinWidth;         // prob
  double floor = kDefaultFloor;                // prob
  std::vector<ExampleId> pool;                 // kcenter; empty = one seeded draw
};

Selection select_random(const StatsTable& stats, std::size_t k, Seed seed);

/// k highest entropies, highest first.
Selection select_entropy_topk(const StatsTable& stats, std::size_t k);
/// k lowest entropies, lowest first.
Selection select_entropy_bottomk(const StatsTable& stats, std::size_t k);

/// Number of correct -> incorrect transitions between consecutive
/// assessments, per example.
std::map<ExampleId, std::uint32_t> count_forgetting_events(const CorrectnessLog& log);

/// k most-forgotten examples; requires forget_count on every row.
Selection select_forgetting(const StatsTable& stats, std::size_t k);

/// Greedy k-center (farthest-first traversal) on Euclidean feature
/// distance. Starts from `initial_pool` (or one seeded uniform draw when it
/// is empty) and returns the k added ids in order of addition; the pool
/// itself is not part of the result.
Selection select_kcenter(const StatsTable& stats, std::size_t k,
                         std::span<const ExampleId> initial_pool, Seed seed);

/// Number of low-entropy examples in a tail selection: floor(beta * k).
std::size_t tail_bottom_share(std::size_t k, double beta);

/// floor(beta*k) lowest-entropy ids followed by the k - floor(beta*k)
/// highest. When the two halves would overlap the bottom half extends past
/// the ids already taken by the top half.
Selection select_tail_deterministic(const StatsTable& stats, std::size_t k, double beta);

/// Weighted sampling without replacement with respect to `probs`,
/// distributed as k successive draws each proportional to the remaining
/// probabilities. Ids are returned in draw order.
Selection select_probabilistic(const StatsTable& stats, std::size_t k,
                               const ProbabilityTable& probs, Seed seed);

/// Dispatches to the method named by `spec`. For kProbabilistic the
/// histogram and probabilities are built from `stats`.
Selection select(const MethodSpec& spec, const StatsTable& stats, std::size_t k, Seed seed);

/// Per-class slot counts: floor(k/C) each, then leftovers one at a time to
/// the classes with the most unassigned candidates (ties to the lower
/// class index), repeated until k slots are placed.
std::vector<std::size_t> class_quotas(std::span<const std::size_t> class_sizes, std::size_t k);

/// Seed handed to class `label` by select_class_balanced.
Seed class_seed(Seed seed, ClassLabel label) noexcept;

/// Runs `inner` separately inside each class with the quotas above and
/// concatenates the results by ascending class. A probabilistic inner
/// method draws from the whole-table probabilities restricted to the class.
Selection select_class_balanced(const MethodSpec& inner, const StatsTable& stats, std::size_t k,
                                Seed seed);

}  // namespace proxydata
