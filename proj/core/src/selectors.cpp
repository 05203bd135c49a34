#include "proxydata/selectors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "proxydata/error.hpp"
#include "proxydata/io.hpp"
#include "proxydata/rng.hpp"

namespace proxydata {
namespace {

void check_budget(std::size_t k, std::size_t available, std::string_view what) {
  if (k == 0) fail(ErrorKind::kInvalidInput, std::string(what) + ": k must be >= 1");
  if (k > available) {
    fail(ErrorKind::kCapacity, std::string(what) + ": k = " + std::to_string(k) +
                                   " exceeds the " + std::to_string(available) +
                                   " available examples");
  }
}

MethodDescriptor describe(Method method) { return {std::string(to_string(method)), {}}; }

// Row positions ordered by (entropy ascending, id ascending).
std::vector<std::size_t> ascending_entropy_order(const StatsTable& stats) {
  std::vector<std::size_t> order(stats.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Rows are already id-sorted, so a stable sort on entropy keeps id order on ties.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return stats[a].entropy < stats[b].entropy;
  });
  return order;
}

// Row positions ordered by (entropy descending, id ascending).
std::vector<std::size_t> descending_entropy_order(const StatsTable& stats) {
  std::vector<std::size_t> order(stats.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return stats[a].entropy > stats[b].entropy;
  });
  return order;
}

std::vector<ExampleId> ids_of(const StatsTable& stats, std::span<const std::size_t> rows) {
  std::vector<ExampleId> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(stats[r].id);
  return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::kRandom: return "random";
    case Method::kEntropyTop: return "entropy-top";
    case Method::kEntropyBottom: return "entropy-bottom";
    case Method::kForgetting: return "forgetting";
    case Method::kKCenter: return "kcenter";
    case Method::kTail: return "tail";
    case Method::kProbabilistic: return "prob";
  }
  return "random";
}

std::string_view method_names() noexcept {
  return "random, entropy-top, entropy-bottom, forgetting, kcenter, tail, prob";
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::kRandom, Method::kEntropyTop, Method::kEntropyBottom,
                   Method::kForgetting, Method::kKCenter, Method::kTail,
                   Method::kProbabilistic}) {
    if (text == to_string(m)) return m;
  }
  fail(ErrorKind::kUsage, "unknown method '" + std::string(text) +
                              "'; valid methods: " + std::string(method_names()));
}

// ------------------------------------------------------------------ random

Selection select_random(const StatsTable& stats, std::size_t k, Seed seed) {
  check_budget(k, stats.size(), "random selection");
  std::vector<ExampleId> ids(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) ids[i] = stats[i].id;
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(ids.size() - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(k);
  return Selection(describe(Method::kRandom), std::move(ids), k, seed);
}

// ----------------------------------------------------------------- entropy

Selection select_entropy_topk(const StatsTable& stats, std::size_t k) {
  check_budget(k, stats.size(), "entropy top-k selection");
  auto order = descending_entropy_order(stats);
  order.resize(k);
  return Selection(describe(Method::kEntropyTop), ids_of(stats, order), k, std::nullopt);
}

Selection select_entropy_bottomk(const StatsTable& stats, std::size_t k) {
  check_budget(k, stats.size(), "entropy bottom-k selection");
  auto order = ascending_entropy_order(stats);
  order.resize(k);
  return Selection(describe(Method::kEntropyBottom), ids_of(stats, order), k, std::nullopt);
}

// -------------------------------------------------------------- forgetting

std::map<ExampleId, std::uint32_t> count_forgetting_events(const CorrectnessLog& log) {
  std::map<ExampleId, std::uint32_t> counts;
  for (const auto& row : log.rows()) {
    std::uint32_t n = 0;
    for (std::size_t e = 1; e < row.correct.size(); ++e) {
      if (row.correct[e - 1] && !row.correct[e]) ++n;
    }
    counts.emplace(row.id, n);
  }
  return counts;
}

Selection select_forgetting(const StatsTable& stats, std::size_t k) {
  for (const auto& row : stats.rows()) {
    if (!row.forget_count) {
      fail(ErrorKind::kInvalidInput,
           "forgetting selection: id " + std::to_string(row.id) + " has no forget count");
    }
  }
  check_budget(k, stats.size(), "forgetting selection");
  std::vector<std::size_t> order(stats.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = stats[a];
    const auto& y = stats[b];
    if (*x.forget_count != *y.forget_count) return *x.forget_count > *y.forget_count;
    return x.entropy > y.entropy;
  });
  order.resize(k);
  return Selection(describe(Method::kForgetting), ids_of(stats, order), k, std::nullopt);
}

// ---------------------------------------------------------------- k-center

Selection select_kcenter(const StatsTable& stats, std::size_t k,
                         std::span<const ExampleId> initial_pool, Seed seed) {
  if (!stats.feature_dim()) {
    fail(ErrorKind::kInvalidInput, "k-center selection: feature vectors are required");
  }
  const std::size_t n = stats.size();
  std::vector<bool> pooled(n, false);
  std::vector<std::size_t> pool_rows;
  for (ExampleId id : initial_pool) {
    auto idx = stats.index_of(id);
    if (!idx) {
      fail(ErrorKind::kConsistency,
           "k-center selection: pool id " + std::to_string(id) + " is not in the stats table");
    }
    if (!pooled[*idx]) {
      pooled[*idx] = true;
      pool_rows.push_back(*idx);
    }
  }
  const bool drew_pool = pool_rows.empty();
  if (drew_pool) {
    if (n == 0) fail(ErrorKind::kCapacity, "k-center selection: stats table is empty");
    Rng rng(seed);
    const auto r = static_cast<std::size_t>(rng.below(n));
    pooled[r] = true;
    pool_rows.push_back(r);
  }
  if (k == 0) fail(ErrorKind::kInvalidInput, "k-center selection: k must be >= 1");
  if (k + pool_rows.size() > n) {
    fail(ErrorKind::kCapacity, "k-center selection: k = " + std::to_string(k) + " plus pool of " +
                                   std::to_string(pool_rows.size()) + " exceeds " +
                                   std::to_string(n) + " examples");
  }

  // Squared distances preserve the Euclidean argmax.
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  auto absorb = [&](std::size_t center) {
    const auto& c = stats[center].feature;
    for (std::size_t i = 0; i < n; ++i) {
      if (pooled[i]) continue;
      nearest[i] = std::min(nearest[i], squared_distance(stats[i].feature, c));
    }
  };
  for (std::size_t r : pool_rows) absorb(r);

  std::vector<ExampleId> out;
  out.reserve(k);
  while (out.size() < k) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (pooled[i]) continue;
      if (best == n || nearest[i] > nearest[best]) best = i;
    }
    pooled[best] = true;
    out.push_back(stats[best].id);
    absorb(best);
  }

  MethodDescriptor method = describe(Method::kKCenter);
  if (drew_pool) {
    method.params.emplace_back("pool", "seeded");
  } else {
    std::string ids;
    for (std::size_t r : pool_rows) {
      if (!ids.empty()) ids += ' ';
      ids += std::to_string(stats[r].id);
    }
    method.params.emplace_back("pool", ids);
  }
  return Selection(std::move(method), std::move(out), k,
                   drew_pool ? std::optional<Seed>(seed) : std::nullopt);
}

// -------------------------------------------------------------------- tail

std::size_t tail_bottom_share(std::size_t k, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    fail(ErrorKind::kInvalidInput, "tail selection: beta must lie in (0, 1)");
  }
  // The epsilon absorbs binary representation error of decimal betas
  // (0.29 * 100 == 28.999999999999996).
  const auto share = static_cast<std::size_t>(std::floor(beta * static_cast<double>(k) + 1e-9));
  return std::min(share, k);
}

Selection select_tail_deterministic(const StatsTable& stats, std::size_t k, double beta) {
  const std::size_t bottom = tail_bottom_share(k, beta);
  check_budget(k, stats.size(), "tail selection");
  const std::size_t top = k - bottom;

  std::vector<bool> taken(stats.size(), false);
  const auto desc = descending_entropy_order(stats);
  std::vector<std::size_t> top_rows(desc.begin(), desc.begin() + static_cast<std::ptrdiff_t>(top));
  for (std::size_t r : top_rows) taken[r] = true;

  std::vector<std::size_t> bottom_rows;
  bottom_rows.reserve(bottom);
  for (std::size_t r : ascending_entropy_order(stats)) {
    if (bottom_rows.size() == bottom) break;
    if (!taken[r]) bottom_rows.push_back(r);
  }

  std::vector<ExampleId> ids = ids_of(stats, bottom_rows);
  const auto top_ids = ids_of(stats, top_rows);
  ids.insert(ids.end(), top_ids.begin(), top_ids.end());

  MethodDescriptor method = describe(Method::kTail);
  method.params.emplace_back("beta", format_real(beta));
  return Selection(std::move(method), std::move(ids), k, std::nullopt);
}

// ----------------------------------------------------------- probabilistic

Selection select_probabilistic(const StatsTable& stats, std::size_t k,
                               const ProbabilityTable& probs, Seed seed) {
  probs.check_aligned(stats);
  std::vector<Probability> entries(probs.entries().begin(), probs.entries().end());
  std::sort(entries.begin(), entries.end(),
            [](const Probability& a, const Probability& b) { return a.id < b.id; });

  // Efraimidis-Spirakis: key = ln(u) / p, keep the k largest keys. The
  // order of decreasing keys is distributed as successive renormalized
  // draws.
  struct Keyed {
    double key;
    ExampleId id;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(entries.size());
  Rng rng(seed);
  for (const auto& e : entries) {
    const double u = rng.open01();
    if (e.p > 0.0) keyed.push_back({std::log(u) / e.p, e.id});
  }
  check_budget(k, keyed.size(), "probabilistic selection (positive-probability examples)");

  auto by_key = [](const Keyed& a, const Keyed& b) {
    if (a.key != b.key) return a.key > b.key;
    return a.id < b.id;
  };
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k), keyed.end(),
                    by_key);
  std::vector<ExampleId> ids;
  ids.reserve(k);
  for (std::size_t i = 0; i < k; ++i) ids.push_back(keyed[i].id);
  return Selection(describe(Method::kProbabilistic), std::move(ids), k, seed);
}

// ---------------------------------------------------------------- dispatch

namespace {

Selection with_params(Selection sel, const MethodSpec& spec) {
  if (spec.method != Method::kProbabilistic) return sel;
  MethodDescriptor method = sel.method();
  method.params.emplace_back("weight", std::string(to_string(spec.weight)));
  method.params.emplace_back("bin_width", format_real(spec.bin_width));
  method.params.emplace_back("floor", format_real(spec.floor));
  return Selection(std::move(method), std::vector<ExampleId>(sel.ids().begin(), sel.ids().end()),
                   sel.k(), sel.seed());
}

}  // namespace

Selection select(const MethodSpec& spec, const StatsTable& stats, std::size_t k, Seed seed) {
  switch (spec.method) {
    case Method::kRandom: return select_random(stats, k, seed);
    case Method::kEntropyTop: return select_entropy_topk(stats, k);
    case Method::kEntropyBottom: return select_entropy_bottomk(stats, k);
    case Method::kForgetting: return select_forgetting(stats, k);
    case Method::kKCenter: return select_kcenter(stats, k, spec.pool, seed);
    case Method::kTail: return select_tail_deterministic(stats, k, spec.beta);
    case Method::kProbabilistic: {
      if (stats.empty()) {
        fail(ErrorKind::kCapacity, "probabilistic selection: stats table is empty");
      }
      const Histogram hist = build_histogram(stats, spec.bin_width, spec.floor);
      const ProbabilityTable probs = selection_probabilities(stats, hist, spec.weight);
      return with_params(select_probabilistic(stats, k, probs, seed), spec);
    }
  }
  fail(ErrorKind::kInvalidInput, "unhandled method");
}

// ---------------------------------------------------------- class-balanced

std::vector<std::size_t> class_quotas(std::span<const std::size_t> class_sizes, std::size_t k) {
  const std::size_t classes = class_sizes.size();
  if (classes == 0) fail(ErrorKind::kInvalidInput, "class-balanced selection: no classes");
  if (k < classes) {
    fail(ErrorKind::kInvalidInput, "class-balanced selection: k = " + std::to_string(k) +
                                       " is smaller than the class count " +
                                       std::to_string(classes));
  }
  const std::size_t total = std::accumulate(class_sizes.begin(), class_sizes.end(), std::size_t{0});
  if (total < k) {
    fail(ErrorKind::kCapacity, "class-balanced selection: k = " + std::to_string(k) +
                                   " exceeds the " + std::to_string(total) + " candidates");
  }

  std::vector<std::size_t> quota(classes);
  std::size_t placed = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    quota[c] = std::min(k / classes, class_sizes[c]);
    placed += quota[c];
  }
  while (placed < k) {
    std::vector<std::size_t> open;
    for (std::size_t c = 0; c < classes; ++c) {
      if (class_sizes[c] > quota[c]) open.push_back(c);
    }
    std::stable_sort(open.begin(), open.end(), [&](std::size_t a, std::size_t b) {
      return class_sizes[a] - quota[a] > class_sizes[b] - quota[b];
    });
    for (std::size_t c : open) {
      if (placed == k) break;
      ++quota[c];
      ++placed;
    }
  }
  return quota;
}

Seed class_seed(Seed seed, ClassLabel label) noexcept { return derive_seed(seed, label); }

Selection select_class_balanced(const MethodSpec& inner, const StatsTable& stats, std::size_t k,
                                Seed seed) {
  if (inner.method == Method::kKCenter) {
    fail(ErrorKind::kInvalidInput, "class-balanced selection does not support kcenter");
  }
  const std::size_t classes = stats.class_count();
  std::vector<StatsTable> per_class;
  std::vector<std::size_t> sizes;
  per_class.reserve(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    per_class.push_back(stats.filter_label(static_cast<ClassLabel>(c)));
    sizes.push_back(per_class.back().size());
  }
  const auto quota = class_quotas(sizes, k);

  std::optional<ProbabilityTable> whole;
  if (inner.method == Method::kProbabilistic) {
    const Histogram hist = build_histogram(stats, inner.bin_width, inner.floor);
    whole = selection_probabilities(stats, hist, inner.weight);
  }

  std::vector<ExampleId> ids;
  ids.reserve(k);
  for (std::size_t c = 0; c < classes; ++c) {
    if (quota[c] == 0) continue;
    const StatsTable& sub = per_class[c];
    const Seed s = class_seed(seed, static_cast<ClassLabel>(c));
    std::vector<ExampleId> part;
    if (whole) {
      std::vector<ExampleId> sub_ids;
      std::vector<double> masses;
      for (const auto& e : whole->entries()) {
        if (sub.find(e.id) != nullptr) {
          sub_ids.push_back(e.id);
          masses.push_back(e.p);
        }
      }
      const auto probs = ProbabilityTable::from_masses(sub_ids, masses);
      const auto sel = select_probabilistic(sub, quota[c], probs, s);
      part.assign(sel.ids().begin(), sel.ids().end());
    } else {
      const auto sel = select(inner, sub, quota[c], s);
      part.assign(sel.ids().begin(), sel.ids().end());
    }
    ids.insert(ids.end(), part.begin(), part.end());
  }

  MethodDescriptor method{"class-balanced", {{"inner", std::string(to_string(inner.method))}}};
  if (inner.method == Method::kTail) method.params.emplace_back("beta", format_real(inner.beta));
  if (inner.method == Method::kProbabilistic) {
    method.params.emplace_back("weight", std::string(to_string(inner.weight)));
    method.params.emplace_back("bin_width", format_real(inner.bin_width));
    method.params.emplace_back("floor", format_real(inner.floor));
  }
  return Selection(std::move(method), std::move(ids), k, seed);
}

}  // namespace proxydata
