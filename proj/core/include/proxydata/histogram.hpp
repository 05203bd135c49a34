#pragma once

#include <cstddef>
#include <vector>

#include "proxydata/types.hpp"

namespace proxydata {

inline constexpr double kDefaultBinWidth = 0.25;
inline constexpr double kDefaultFloor = 1e-12;

/// log10(max(entropy, floor)): the histogram axis coordinate of an entropy.
double log_axis(double entropy, double floor) noexcept;

/// Bins log10(max(entropy, floor)) of every example into uniform bins of
/// `bin_width`, with origin = bin_width * floor(min / bin_width). Only the
/// range between the lowest and highest occupied bins is kept.
Histogram build_histogram(const StatsTable& stats, double bin_width = kDefaultBinWidth,
                          double floor = kDefaultFloor);

/// Bin holding `entropy`; values outside the built range clamp to the end
/// bins.
std::size_t bin_of(double entropy, const Histogram& hist) noexcept;

/// Weight of `bin` under `scheme`. Empty bins weigh 0 and are left out of
/// every maximum, count and sum, so the weights of the non-empty bins sum
/// to 1.
///   W1: (max_h - h_b + 1) / sum_b'(max_h - h_b' + 1)
///   W2: 1 / (number of non-empty bins)
///   W3: (1 / h_b) / sum_b'(1 / h_b')
double selection_weight(std::size_t bin, const Histogram& hist, WeightScheme scheme);

/// selection_weight for every bin at once.
std::vector<double> selection_weights(const Histogram& hist, WeightScheme scheme);

/// Per-example probability norm(W(h_x) / |h_x|), aligned with stats order.
/// Fails with a consistency error if an example falls in an empty bin.
ProbabilityTable selection_probabilities(const StatsTable& stats, const Histogram& hist,
                                         WeightScheme scheme);

}  // namespace proxydata
