#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "proxydata/histogram.hpp"
#include "proxydata/types.hpp"

namespace proxydata {

/// Entropy cut points of the lowest and highest deciles of a table, by
/// rank: low = value at ascending rank ceil(n/10) - 1, high = value at
/// rank n - ceil(n/10). Ties with a cut point count as in the tail.
struct TailThresholds {
  double low = 0.0;
  double high = 0.0;
};

TailThresholds tail_thresholds(const StatsTable& full);

/// Fraction of `ids` whose entropy lies in either decile tail of `full`.
double tail_mass(std::span<const ExampleId> ids, const StatsTable& full,
                 const TailThresholds& thresholds);
double tail_mass(std::span<const ExampleId> ids, const StatsTable& full);

/// Median entropy of the table (mean of the middle pair for even sizes).
double median_entropy(const StatsTable& stats);

struct SubsetReport {
  std::size_t subset_size = 0;
  std::size_t full_size = 0;
  Histogram full_histogram;
  std::vector<std::uint64_t> subset_heights;  // binned like full_histogram
  std::vector<std::size_t> class_counts;      // indexed by label
  std::vector<double> class_ratios;
  TailThresholds thresholds;
  double tail_mass = 0.0;
  double median = 0.0;
  double below_median_fraction = 0.0;
};

/// Composition diagnostics of a selection against its source table.
SubsetReport make_report(const Selection& sel, const StatsTable& stats,
                         double bin_width = kDefaultBinWidth, double floor = kDefaultFloor);

void write_report(std::ostream& out, const SubsetReport& report);

}  // namespace proxydata
