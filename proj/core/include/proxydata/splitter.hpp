#pragma once

#include <cstddef>

#include "proxydata/types.hpp"

namespace proxydata {

inline constexpr double kDefaultSplitRatio = 0.5;

/// Size of the train share: round(ratio * k), halves rounded up.
std::size_t train_share(std::size_t k, double ratio);

/// Shuffles the selected ids with `seed`; the first train_share ids go to
/// train, the rest to val.
SplitResult split_allshuffle(const Selection& sel, double ratio, Seed seed);
/// As above, after checking `sel` against `stats`.
SplitResult split_allshuffle(const Selection& sel, const StatsTable& stats, double ratio,
                             Seed seed);

/// Orders the selected ids by entropy (ties by id) and cuts at
/// train_share. With low_to_train the low-entropy end goes to train,
/// otherwise the high-entropy end does. Consumes no randomness.
SplitResult split_disjoint(const Selection& sel, const StatsTable& stats, double ratio,
                           bool low_to_train);

}  // namespace proxydata
