#pragma once

// Domain types shared across the library. Every type validates its
// invariants on construction and is immutable afterwards.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace proxydata {

/// Caller-assigned example identifier (row index in the source dataset).
using ExampleId = std::uint64_t;
using ClassLabel = std::uint32_t;
using Seed = std::uint64_t;

struct ExampleStat {
  ExampleId id = 0;
  ClassLabel label = 0;
  double entropy = 0.0;  // nats
  std::optional<std::uint32_t> forget_count;
  std::vector<double> feature;  // empty when absent

  bool has_feature() const noexcept { return !feature.empty(); }
};

/// Per-example statistics of a target dataset, sorted by id ascending.
class StatsTable {
 public:
  StatsTable() = default;

  /// Validates and sorts `rows`. Every label must be < class_count.
  StatsTable(std::vector<ExampleStat> rows, std::size_t class_count);

  /// Same as above with class_count = max label + 1 (0 for an empty table).
  static StatsTable with_inferred_classes(std::vector<ExampleStat> rows);

  std::span<const ExampleStat> rows() const& noexcept { return rows_; }
  std::span<const ExampleStat> rows() && = delete;
  const ExampleStat& operator[](std::size_t i) const { return rows_[i]; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  std::size_t class_count() const noexcept { return class_count_; }
  std::optional<std::size_t> feature_dim() const noexcept { return feature_dim_; }
  bool has_forget_counts() const noexcept { return has_forget_counts_; }

  /// Row position of `id`, or nullopt.
  std::optional<std::size_t> index_of(ExampleId id) const noexcept;
  const ExampleStat* find(ExampleId id) const noexcept;

  /// Rows whose ids are in `ids`, keeping class_count. Unknown ids are a
  /// consistency error.
  StatsTable subset(std::span<const ExampleId> ids) const;
  /// Rows with the given label, keeping class_count.
  StatsTable filter_label(ClassLabel label) const;

 private:
  std::vector<ExampleStat> rows_;
  std::size_t class_count_ = 0;
  std::optional<std::size_t> feature_dim_;
  bool has_forget_counts_ = false;
};

struct LogitsRow {
  ExampleId id = 0;
  ClassLabel label = 0;
  std::vector<double> logits;
};

/// Raw classifier outputs. All rows share one dimension d >= 2.
class LogitsTable {
 public:
  LogitsTable() = default;
  explicit LogitsTable(std::vector<LogitsRow> rows);

  std::span<const LogitsRow> rows() const& noexcept { return rows_; }
  std::span<const LogitsRow> rows() && = delete;
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  /// Logit dimension; 0 for an empty table.
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::vector<LogitsRow> rows_;
  std::size_t dim_ = 0;
};

/// Uniform-width histogram on the log10(entropy) axis. Bin b covers
/// [origin + b*width, origin + (b+1)*width).
class Histogram {
 public:
  Histogram(double origin, double bin_width, double floor,
            std::vector<std::uint64_t> heights);

  double origin() const noexcept { return origin_; }
  double bin_width() const noexcept { return bin_width_; }
  double floor() const noexcept { return floor_; }
  std::span<const std::uint64_t> heights() const& noexcept { return heights_; }
  std::span<const std::uint64_t> heights() && = delete;
  std::uint64_t height(std::size_t bin) const { return heights_.at(bin); }
  std::size_t bin_count() const noexcept { return heights_.size(); }
  std::size_t nonempty_bin_count() const noexcept;
  std::uint64_t total() const noexcept { return total_; }

  double left_edge(std::size_t bin) const noexcept;
  double right_edge(std::size_t bin) const noexcept { return left_edge(bin + 1); }

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  double origin_;
  double bin_width_;
  double floor_;
  std::vector<std::uint64_t> heights_;
  std::uint64_t total_ = 0;
};

enum class WeightScheme { kW1, kW2, kW3 };

std::string_view to_string(WeightScheme scheme) noexcept;
/// Accepts "w1", "w2", "w3" (case-insensitive).
WeightScheme parse_weight_scheme(std::string_view text);

struct Probability {
  ExampleId id = 0;
  double p = 0.0;
};

/// Per-example selection probabilities summing to 1 within 1e-9.
class ProbabilityTable {
 public:
  ProbabilityTable() = default;
  explicit ProbabilityTable(std::vector<Probability> entries);

  /// Normalizes non-negative masses into a table.
  static ProbabilityTable from_masses(std::span<const ExampleId> ids,
                                      std::span<const double> masses);

  std::span<const Probability> entries() const& noexcept { return entries_; }
  std::span<const Probability> entries() && = delete;
  std::size_t size() const noexcept { return entries_.size(); }
  const Probability& operator[](std::size_t i) const { return entries_[i]; }

  /// Consistency error unless the ids are exactly those of `stats`.
  void check_aligned(const StatsTable& stats) const;

 private:
  std::vector<Probability> entries_;
};

struct MethodDescriptor {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;

  friend bool operator==(const MethodDescriptor&, const MethodDescriptor&) = default;
};

/// A chosen subset of ids in selection order.
class Selection {
 public:
  Selection(MethodDescriptor method, std::vector<ExampleId> ids, std::size_t k,
            std::optional<Seed> seed);

  const MethodDescriptor& method() const noexcept { return method_; }
  std::span<const ExampleId> ids() const& noexcept { return ids_; }
  std::span<const ExampleId> ids() && = delete;
  std::size_t k() const noexcept { return k_; }
  std::optional<Seed> seed() const noexcept { return seed_; }

  /// Consistency error if any id is absent from `stats`.
  void check_against(const StatsTable& stats) const;

  friend bool operator==(const Selection&, const Selection&) = default;

 private:
  MethodDescriptor method_;
  std::vector<ExampleId> ids_;
  std::size_t k_;
  std::optional<Seed> seed_;
};

enum class SplitMode { kAllShuffle, kDisjoint };

std::string_view to_string(SplitMode mode) noexcept;
SplitMode parse_split_mode(std::string_view text);

class SplitResult {
 public:
  SplitResult(std::vector<ExampleId> train, std::vector<ExampleId> val,
              SplitMode mode, double ratio);

  std::span<const ExampleId> train() const& noexcept { return train_; }
  std::span<const ExampleId> train() && = delete;
  std::span<const ExampleId> val() const& noexcept { return val_; }
  std::span<const ExampleId> val() && = delete;
  SplitMode mode() const noexcept { return mode_; }
  double ratio() const noexcept { return ratio_; }

 private:
  std::vector<ExampleId> train_;
  std::vector<ExampleId> val_;
  SplitMode mode_;
  double ratio_;
};

struct CorrectnessRow {
  ExampleId id = 0;
  std::vector<bool> correct;  // entry e: classified correctly at assessment e
};

class CorrectnessLog {
 public:
  CorrectnessLog() = default;
  explicit CorrectnessLog(std::vector<CorrectnessRow> rows);

  std::span<const CorrectnessRow> rows() const& noexcept { return rows_; }
  std::span<const CorrectnessRow> rows() && = delete;
  std::size_t epochs() const noexcept { return epochs_; }
  std::size_t size() const noexcept { return rows_.size(); }

 private:
  std::vector<CorrectnessRow> rows_;
  std::size_t epochs_ = 0;
};

struct FeatureRow {
  ExampleId id = 0;
  std::vector<double> values;
};

/// Returns `stats` with each example's forget_count set from `counts`.
/// Every id of `stats` must appear in `counts`.
StatsTable attach_forget_counts(const StatsTable& stats,
                                const std::map<ExampleId, std::uint32_t>& counts);

/// Returns `stats` with feature vectors attached. Every id of `stats` must
/// have a row; extra rows are ignored.
StatsTable attach_features(const StatsTable& stats, std::span<const FeatureRow> features);

}  // namespace proxydata
