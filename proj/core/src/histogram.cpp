#include "proxydata/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "proxydata/error.hpp"

namespace proxydata {
namespace {

// Bin of axis coordinate t for bins starting at `origin`, honoring the
// half-open edges as computed by origin + b * width. May be negative or
// beyond the last bin; callers clamp.
long long raw_bin(double t, double origin, double width) noexcept {
  auto b = static_cast<long long>(std::floor((t - origin) / width));
  auto edge = [&](long long i) { return origin + static_cast<double>(i) * width; };
  while (t < edge(b)) --b;
  while (t >= edge(b + 1)) ++b;
  return b;
}

}  // namespace

double log_axis(double entropy, double floor) noexcept {
  return std::log10(std::max(entropy, floor));
}

Histogram build_histogram(const StatsTable& stats, double bin_width, double floor) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    fail(ErrorKind::kInvalidInput, "histogram: bin width must be positive");
  }
  if (!(floor > 0.0) || !std::isfinite(floor)) {
    fail(ErrorKind::kInvalidInput, "histogram: floor must be positive");
  }
  if (stats.empty()) fail(ErrorKind::kInvalidInput, "histogram: stats table is empty");

  std::vector<double> axis;
  axis.reserve(stats.size());
  for (const auto& row : stats.rows()) axis.push_back(log_axis(row.entropy, floor));
  const double lo = *std::min_element(axis.begin(), axis.end());

  double origin = bin_width * std::floor(lo / bin_width);
  if (lo < origin) origin -= bin_width;

  long long first = std::numeric_limits<long long>::max();
  long long last = std::numeric_limits<long long>::min();
  std::vector<long long> bins;
  bins.reserve(axis.size());
  for (double t : axis) {
    const long long b = raw_bin(t, origin, bin_width);
    first = std::min(first, b);
    last = std::max(last, b);
    bins.push_back(b);
  }
  // Drop empty leading bins (only possible if rounding put origin a bin low).
  origin += static_cast<double>(first) * bin_width;
  std::vector<std::uint64_t> heights(static_cast<std::size_t>(last - first + 1), 0);
  for (long long b : bins) ++heights[static_cast<std::size_t>(b - first)];
  return Histogram(origin, bin_width, floor, std::move(heights));
}

std::size_t bin_of(double entropy, const Histogram& hist) noexcept {
  const double t = log_axis(entropy, hist.floor());
  const long long b = raw_bin(t, hist.origin(), hist.bin_width());
  if (b < 0) return 0;
  const auto last = static_cast<long long>(hist.bin_count()) - 1;
  return static_cast<std::size_t>(std::min(b, last));
}

std::vector<double> selection_weights(const Histogram& hist, WeightScheme scheme) {
  const auto heights = hist.heights();
  std::vector<double> w(heights.size(), 0.0);
  std::uint64_t max_height = 0;
  std::size_t nonempty = 0;
  for (auto h : heights) {
    if (h == 0) continue;
    max_height = std::max(max_height, h);
    ++nonempty;
  }
  if (nonempty == 0) return w;

  for (std::size_t b = 0; b < heights.size(); ++b) {
    if (heights[b] == 0) continue;
    switch (scheme) {
      case WeightScheme::kW1:
        w[b] = static_cast<double>(max_height - heights[b] + 1);
        break;
      case WeightScheme::kW2:
        w[b] = 1.0;
        break;
      case WeightScheme::kW3:
        w[b] = 1.0 / static_cast<double>(heights[b]);
        break;
    }
  }
  long double total = 0.0L;
  for (double x : w) total += x;
  for (double& x : w) x = static_cast<double>(x / total);
  return w;
}

double selection_weight(std::size_t bin, const Histogram& hist, WeightScheme scheme) {
  if (bin >= hist.bin_count()) {
    fail(ErrorKind::kInvalidInput, "bin " + std::to_string(bin) + " is out of range (" +
                                       std::to_string(hist.bin_count()) + " bins)");
  }
  return selection_weights(hist, scheme)[bin];
}

ProbabilityTable selection_probabilities(const StatsTable& stats, const Histogram& hist,
                                         WeightScheme scheme) {
  const std::vector<double> weights = selection_weights(hist, scheme);
  std::vector<double> per_bin(weights.size(), 0.0);
  for (std::size_t b = 0; b < weights.size(); ++b) {
    if (hist.height(b) > 0) per_bin[b] = weights[b] / static_cast<double>(hist.height(b));
  }

  std::vector<ExampleId> ids;
  std::vector<double> masses;
  ids.reserve(stats.size());
  masses.reserve(stats.size());
  for (const auto& row : stats.rows()) {
    const std::size_t b = bin_of(row.entropy, hist);
    if (hist.height(b) == 0) {
      fail(ErrorKind::kConsistency, "example " + std::to_string(row.id) +
                                        " maps to empty bin " + std::to_string(b) +
                                        "; histogram was not built from this table");
    }
    ids.push_back(row.id);
    masses.push_back(per_bin[b]);
  }
  return ProbabilityTable::from_masses(ids, masses);
}

}  // namespace proxydata
