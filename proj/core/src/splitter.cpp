#include "proxydata/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "proxydata/error.hpp"
#include "proxydata/rng.hpp"

namespace proxydata {
namespace {

void check_ratio(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    fail(ErrorKind::kInvalidInput, "split: ratio must lie in (0, 1)");
  }
}

SplitResult cut(std::vector<ExampleId> ordered, double ratio, SplitMode mode) {
  const std::size_t n_train = train_share(ordered.size(), ratio);
  std::vector<ExampleId> val(ordered.begin() + static_cast<std::ptrdiff_t>(n_train), ordered.end());
  ordered.resize(n_train);
  return SplitResult(std::move(ordered), std::move(val), mode, ratio);
}

}  // namespace

std::size_t train_share(std::size_t k, double ratio) {
  check_ratio(ratio);
  const auto n = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(k) + 0.5));
  return std::min(n, k);
}

SplitResult split_allshuffle(const Selection& sel, double ratio, Seed seed) {
  check_ratio(ratio);
  std::vector<ExampleId> ids(sel.ids().begin(), sel.ids().end());
  Rng rng(seed);
  for (std::size_t i = ids.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(ids[i - 1], ids[j]);
  }
  return cut(std::move(ids), ratio, SplitMode::kAllShuffle);
}

SplitResult split_allshuffle(const Selection& sel, const StatsTable& stats, double ratio,
                             Seed seed) {
  sel.check_against(stats);
  return split_allshuffle(sel, ratio, seed);
}

SplitResult split_disjoint(const Selection& sel, const StatsTable& stats, double ratio,
                           bool low_to_train) {
  check_ratio(ratio);
  sel.check_against(stats);
  struct Entry {
    double entropy;
    ExampleId id;
  };
  std::vector<Entry> entries;
  entries.reserve(sel.k());
  for (ExampleId id : sel.ids()) entries.push_back({stats.find(id)->entropy, id});
  std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    if (a.entropy != b.entropy) {
      return low_to_train ? a.entropy < b.entropy : a.entropy > b.entropy;
    }
    return a.id < b.id;
  });
  std::vector<ExampleId> ordered;
  ordered.reserve(entries.size());
  for (const auto& e : entries) ordered.push_back(e.id);
  return cut(std::move(ordered), ratio, SplitMode::kDisjoint);
}

}  // namespace proxydata
