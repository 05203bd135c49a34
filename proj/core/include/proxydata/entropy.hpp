#pragma once

#include <span>
#include <vector>

#include "proxydata/types.hpp"

namespace proxydata {

/// Softmax of a logit vector (d >= 2, all finite), computed with
/// max-subtraction. Invariant under adding a constant to every logit.
std::vector<double> predictive_distribution(std::span<const double> logits);

/// Shannon entropy in nats, -sum p ln p with 0 ln 0 = 0. Components below
/// 1e-300 count as zero. `probs` must lie in [0,1] and sum to 1 within 1e-9.
double entropy(std::span<const double> probs);

/// One ExampleStat per logits row, sorted by id. class_count is the larger
/// of the logit dimension and max label + 1.
StatsTable compute_entropy_table(const LogitsTable& logits);

}  // namespace proxydata
