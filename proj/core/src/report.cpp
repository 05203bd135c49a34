#include "proxydata/report.hpp"

#include <algorithm>
#include <ostream>

#include "proxydata/error.hpp"
#include "proxydata/io.hpp"

namespace proxydata {
namespace {

std::vector<double> sorted_entropies(const StatsTable& stats) {
  std::vector<double> v;
  v.reserve(stats.size());
  for (const auto& row : stats.rows()) v.push_back(row.entropy);
  std::sort(v.begin(), v.end());
  return v;
}

const ExampleStat& lookup(const StatsTable& stats, ExampleId id) {
  const ExampleStat* row = stats.find(id);
  if (row == nullptr) {
    fail(ErrorKind::kConsistency, "selected id " + std::to_string(id) + " is not in the stats table");
  }
  return *row;
}

}  // namespace

TailThresholds tail_thresholds(const StatsTable& full) {
  if (full.empty()) fail(ErrorKind::kInvalidInput, "tail thresholds of an empty table");
  const auto v = sorted_entropies(full);
  const std::size_t n = v.size();
  const std::size_t decile = (n + 9) / 10;
  return {v[decile - 1], v[n - decile]};
}

double tail_mass(std::span<const ExampleId> ids, const StatsTable& full,
                 const TailThresholds& thresholds) {
  if (ids.empty()) return 0.0;
  std::size_t in_tail = 0;
  for (ExampleId id : ids) {
    const double e = lookup(full, id).entropy;
    if (e <= thresholds.low || e >= thresholds.high) ++in_tail;
  }
  return static_cast<double>(in_tail) / static_cast<double>(ids.size());
}

double tail_mass(std::span<const ExampleId> ids, const StatsTable& full) {
  return tail_mass(ids, full, tail_thresholds(full));
}

double median_entropy(const StatsTable& stats) {
  if (stats.empty()) fail(ErrorKind::kInvalidInput, "median of an empty table");
  const auto v = sorted_entropies(stats);
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

SubsetReport make_report(const Selection& sel, const StatsTable& stats, double bin_width,
                         double floor) {
  sel.check_against(stats);
  SubsetReport r{.subset_size = sel.k(),
                 .full_size = stats.size(),
                 .full_histogram = build_histogram(stats, bin_width, floor),
                 .subset_heights = {},
                 .class_counts = {},
                 .class_ratios = {},
                 .thresholds = tail_thresholds(stats)};
  r.subset_heights.assign(r.full_histogram.bin_count(), 0);
  r.class_counts.assign(stats.class_count(), 0);
  r.median = median_entropy(stats);
  std::size_t below = 0;
  for (ExampleId id : sel.ids()) {
    const ExampleStat& row = lookup(stats, id);
    ++r.subset_heights[bin_of(row.entropy, r.full_histogram)];
    ++r.class_counts[row.label];
    if (row.entropy < r.median) ++below;
  }
  r.class_ratios.reserve(r.class_counts.size());
  for (std::size_t c : r.class_counts) {
    r.class_ratios.push_back(sel.k() == 0 ? 0.0
                                          : static_cast<double>(c) / static_cast<double>(sel.k()));
  }
  r.tail_mass = tail_mass(sel.ids(), stats, r.thresholds);
  r.below_median_fraction =
      sel.k() == 0 ? 0.0 : static_cast<double>(below) / static_cast<double>(sel.k());
  return r;
}

void write_report(std::ostream& out, const SubsetReport& r) {
  out << "# subset_size=" << r.subset_size << '\n'
      << "# full_size=" << r.full_size << '\n'
      << "# median_entropy=" << format_real(r.median) << '\n'
      << "# below_median_fraction=" << format_real(r.below_median_fraction) << '\n'
      << "# tail_low_threshold=" << format_real(r.thresholds.low) << '\n'
      << "# tail_high_threshold=" << format_real(r.thresholds.high) << '\n'
      << "# tail_mass=" << format_real(r.tail_mass) << '\n'
      << "[histogram]\n"
      << "bin_index,left_edge_log10,right_edge_log10,full_height,subset_height\n";
  const Histogram& h = r.full_histogram;
  for (std::size_t b = 0; b < h.bin_count(); ++b) {
    out << b << ',' << format_real(h.left_edge(b)) << ',' << format_real(h.right_edge(b)) << ','
        << h.height(b) << ',' << r.subset_heights[b] << '\n';
  }
  out << "[classes]\n"
      << "label,count,ratio\n";
  for (std::size_t c = 0; c < r.class_counts.size(); ++c) {
    out << c << ',' << r.class_counts[c] << ',' << format_real(r.class_ratios[c]) << '\n';
  }
}

}  // namespace proxydata
