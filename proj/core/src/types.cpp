#include "proxydata/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "proxydata/error.hpp"

namespace proxydata {
namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void check_unique_ids(std::span<const ExampleId> sorted_ids, std::string_view what) {
  auto dup = std::adjacent_find(sorted_ids.begin(), sorted_ids.end());
  if (dup != sorted_ids.end()) {
    fail(ErrorKind::kInvalidInput,
         std::string(what) + ": ids must be unique (duplicate id " + std::to_string(*dup) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------- StatsTable

StatsTable::StatsTable(std::vector<ExampleStat> rows, std::size_t class_count)
    : rows_(std::move(rows)), class_count_(class_count) {
  std::sort(rows_.begin(), rows_.end(),
            [](const ExampleStat& a, const ExampleStat& b) { return a.id < b.id; });

  std::size_t with_counts = 0;
  std::size_t with_features = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const ExampleStat& row = rows_[i];
    const std::string where = " (id " + std::to_string(row.id) + ")";
    if (i > 0 && rows_[i - 1].id == row.id) {
      fail(ErrorKind::kInvalidInput, "stats table: ids must be unique" + where);
    }
    if (row.label >= class_count_) {
      fail(ErrorKind::kInvalidInput, "stats table: label must be in [0, " +
                                         std::to_string(class_count_) + ")" + where);
    }
    if (!std::isfinite(row.entropy) || row.entropy < 0.0) {
      fail(ErrorKind::kInvalidInput, "stats table: entropy must be finite and >= 0" + where);
    }
    if (row.forget_count) ++with_counts;
    if (row.has_feature()) {
      if (!feature_dim_) feature_dim_ = row.feature.size();
      if (row.feature.size() != *feature_dim_) {
        fail(ErrorKind::kInvalidInput,
             "stats table: feature vectors must share one dimension" + where);
      }
      for (double v : row.feature) {
        if (!std::isfinite(v)) {
          fail(ErrorKind::kInvalidInput, "stats table: feature values must be finite" + where);
        }
      }
      ++with_features;
    }
  }
  has_forget_counts_ = !rows_.empty() && with_counts == rows_.size();
  if (with_features != 0 && with_features != rows_.size()) {
    fail(ErrorKind::kInvalidInput,
         "stats table: feature vectors must be present for all rows or none");
  }
}

StatsTable StatsTable::with_inferred_classes(std::vector<ExampleStat> rows) {
  std::size_t classes = 0;
  for (const auto& row : rows) classes = std::max<std::size_t>(classes, row.label + std::size_t{1});
  return StatsTable(std::move(rows), classes);
}

std::optional<std::size_t> StatsTable::index_of(ExampleId id) const noexcept {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), id,
                             [](const ExampleStat& row, ExampleId v) { return row.id < v; });
  if (it == rows_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

const ExampleStat* StatsTable::find(ExampleId id) const noexcept {
  auto idx = index_of(id);
  return idx ? &rows_[*idx] : nullptr;
}

StatsTable StatsTable::subset(std::span<const ExampleId> ids) const {
  std::vector<ExampleStat> out;
  out.reserve(ids.size());
  for (ExampleId id : ids) {
    const ExampleStat* row = find(id);
    if (row == nullptr) {
      fail(ErrorKind::kConsistency, "id " + std::to_string(id) + " is not in the stats table");
    }
    out.push_back(*row);
  }
  return StatsTable(std::move(out), class_count_);
}

StatsTable StatsTable::filter_label(ClassLabel label) const {
  std::vector<ExampleStat> out;
  for (const auto& row : rows_) {
    if (row.label == label) out.push_back(row);
  }
  return StatsTable(std::move(out), class_count_);
}

// --------------------------------------------------------------- LogitsTable

LogitsTable::LogitsTable(std::vector<LogitsRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) return;
  dim_ = rows_.front().logits.size();
  if (dim_ < 2) fail(ErrorKind::kInvalidInput, "logits table: dimension must be >= 2");
  std::vector<ExampleId> ids;
  ids.reserve(rows_.size());
  for (const auto& row : rows_) {
    if (row.logits.size() != dim_) {
      fail(ErrorKind::kInvalidInput, "logits table: all rows must share dimension " +
                                         std::to_string(dim_) + " (id " +
                                         std::to_string(row.id) + ")");
    }
    ids.push_back(row.id);
  }
  std::sort(ids.begin(), ids.end());
  check_unique_ids(ids, "logits table");
}

// ----------------------------------------------------------------- Histogram

Histogram::Histogram(double origin, double bin_width, double floor,
                     std::vector<std::uint64_t> heights)
    : origin_(origin), bin_width_(bin_width), floor_(floor), heights_(std::move(heights)) {
  if (!(bin_width_ > 0.0) || !std::isfinite(bin_width_)) {
    fail(ErrorKind::kInvalidInput, "histogram: bin width must be positive");
  }
  if (!(floor_ > 0.0) || !std::isfinite(floor_)) {
    fail(ErrorKind::kInvalidInput, "histogram: floor must be positive");
  }
  if (!std::isfinite(origin_)) fail(ErrorKind::kInvalidInput, "histogram: origin must be finite");
  total_ = std::accumulate(heights_.begin(), heights_.end(), std::uint64_t{0});
}

std::size_t Histogram::nonempty_bin_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(heights_.begin(), heights_.end(), [](std::uint64_t h) { return h > 0; }));
}

double Histogram::left_edge(std::size_t bin) const noexcept {
  return origin_ + static_cast<double>(bin) * bin_width_;
}

std::string_view to_string(WeightScheme scheme) noexcept {
  switch (scheme) {
    case WeightScheme::kW1: return "w1";
    case WeightScheme::kW2: return "w2";
    case WeightScheme::kW3: return "w3";
  }
  return "w1";
}

WeightScheme parse_weight_scheme(std::string_view text) {
  const std::string t = lower(text);
  if (t == "w1") return WeightScheme::kW1;
  if (t == "w2") return WeightScheme::kW2;
  if (t == "w3") return WeightScheme::kW3;
  fail(ErrorKind::kInvalidInput, "unknown weight scheme '" + std::string(text) + "' (expected w1|w2|w3)");
}

// ---------------------------------------------------------- ProbabilityTable

ProbabilityTable::ProbabilityTable(std::vector<Probability> entries) : entries_(std::move(entries)) {
  std::vector<ExampleId> ids;
  ids.reserve(entries_.size());
  double sum = 0.0;
  for (const auto& e : entries_) {
    if (!(e.p >= 0.0 && e.p <= 1.0)) {
      fail(ErrorKind::kInvalidInput,
           "probability table: probabilities must lie in [0, 1] (id " + std::to_string(e.id) + ")");
    }
    sum += e.p;
    ids.push_back(e.id);
  }
  if (!entries_.empty() && std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorKind::kInvalidInput, "probability table: probabilities must sum to 1 within 1e-9");
  }
  std::sort(ids.begin(), ids.end());
  check_unique_ids(ids, "probability table");
}

ProbabilityTable ProbabilityTable::from_masses(std::span<const ExampleId> ids,
                                               std::span<const double> masses) {
  if (ids.size() != masses.size()) {
    fail(ErrorKind::kInvalidInput, "probability table: ids and masses differ in length");
  }
  long double total = 0.0L;
  for (double m : masses) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      fail(ErrorKind::kInvalidInput, "probability table: masses must be finite and >= 0");
    }
    total += m;
  }
  if (!ids.empty() && !(total > 0.0L)) {
    fail(ErrorKind::kInvalidInput, "probability table: total mass must be positive");
  }
  std::vector<Probability> entries(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    entries[i] = {ids[i], static_cast<double>(masses[i] / total)};
  }
  return ProbabilityTable(std::move(entries));
}

void ProbabilityTable::check_aligned(const StatsTable& stats) const {
  if (entries_.size() != stats.size()) {
    fail(ErrorKind::kConsistency, "probability table has " + std::to_string(entries_.size()) +
                                      " entries but the stats table has " +
                                      std::to_string(stats.size()) + " rows");
  }
  for (const auto& e : entries_) {
    if (stats.find(e.id) == nullptr) {
      fail(ErrorKind::kConsistency,
           "probability table id " + std::to_string(e.id) + " is not in the stats table");
    }
  }
}

// ----------------------------------------------------------------- Selection

Selection::Selection(MethodDescriptor method, std::vector<ExampleId> ids, std::size_t k,
                     std::optional<Seed> seed)
    : method_(std::move(method)), ids_(std::move(ids)), k_(k), seed_(seed) {
  if (ids_.size() != k_) {
    fail(ErrorKind::kInvalidInput, "selection: length " + std::to_string(ids_.size()) +
                                       " does not equal k = " + std::to_string(k_));
  }
  std::vector<ExampleId> sorted = ids_;
  std::sort(sorted.begin(), sorted.end());
  check_unique_ids(sorted, "selection");
}

void Selection::check_against(const StatsTable& stats) const {
  for (ExampleId id : ids_) {
    if (stats.find(id) == nullptr) {
      fail(ErrorKind::kConsistency,
           "selected id " + std::to_string(id) + " is not in the stats table");
    }
  }
}

std::string_view to_string(SplitMode mode) noexcept {
  return mode == SplitMode::kAllShuffle ? "allshuffle" : "disjoint";
}

SplitMode parse_split_mode(std::string_view text) {
  const std::string t = lower(text);
  if (t == "allshuffle") return SplitMode::kAllShuffle;
  if (t == "disjoint") return SplitMode::kDisjoint;
  fail(ErrorKind::kInvalidInput,
       "unknown split mode '" + std::string(text) + "' (expected allshuffle|disjoint)");
}

// --------------------------------------------------------------- SplitResult

SplitResult::SplitResult(std::vector<ExampleId> train, std::vector<ExampleId> val,
                         SplitMode mode, double ratio)
    : train_(std::move(train)), val_(std::move(val)), mode_(mode), ratio_(ratio) {
  if (!(ratio_ > 0.0 && ratio_ < 1.0)) {
    fail(ErrorKind::kInvalidInput, "split: ratio must lie in (0, 1)");
  }
  std::vector<ExampleId> all = train_;
  all.insert(all.end(), val_.begin(), val_.end());
  std::sort(all.begin(), all.end());
  check_unique_ids(all, "split (train and val must be disjoint)");
}

// ------------------------------------------------------------ CorrectnessLog

CorrectnessLog::CorrectnessLog(std::vector<CorrectnessRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) return;
  epochs_ = rows_.front().correct.size();
  if (epochs_ < 1) fail(ErrorKind::kInvalidInput, "correctness log: need at least one assessment");
  std::vector<ExampleId> ids;
  ids.reserve(rows_.size());
  for (const auto& row : rows_) {
    if (row.correct.size() != epochs_) {
      fail(ErrorKind::kInvalidInput, "correctness log: all rows must have " +
                                         std::to_string(epochs_) + " assessments (id " +
                                         std::to_string(row.id) + ")");
    }
    ids.push_back(row.id);
  }
  std::sort(ids.begin(), ids.end());
  check_unique_ids(ids, "correctness log");
}

// ------------------------------------------------------------------- attach

StatsTable attach_forget_counts(const StatsTable& stats,
                                const std::map<ExampleId, std::uint32_t>& counts) {
  std::vector<ExampleStat> rows(stats.rows().begin(), stats.rows().end());
  for (auto& row : rows) {
    auto it = counts.find(row.id);
    if (it == counts.end()) {
      fail(ErrorKind::kConsistency,
           "no forgetting count for id " + std::to_string(row.id));
    }
    row.forget_count = it->second;
  }
  return StatsTable(std::move(rows), stats.class_count());
}

StatsTable attach_features(const StatsTable& stats, std::span<const FeatureRow> features) {
  std::map<ExampleId, const FeatureRow*> by_id;
  for (const auto& f : features) by_id.emplace(f.id, &f);
  std::vector<ExampleStat> rows(stats.rows().begin(), stats.rows().end());
  for (auto& row : rows) {
    auto it = by_id.find(row.id);
    if (it == by_id.end()) {
      fail(ErrorKind::kConsistency, "no feature vector for id " + std::to_string(row.id));
    }
    row.feature = it->second->values;
  }
  return StatsTable(std::move(rows), stats.class_count());
}

}  // namespace proxydata
