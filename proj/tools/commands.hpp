#pragma once

// Command implementations behind the `proxydata` executable. Each cmd_*
// throws proxydata::Error on failure; run() maps errors to exit codes and
// prints them to the diagnostic stream prefixed with kErrorPrefix.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "proxydata/histogram.hpp"
#include "proxydata/selectors.hpp"
#include "proxydata/splitter.hpp"
#include "proxydata/types.hpp"

namespace proxydata::cli {

inline constexpr const char* kErrorPrefix = "proxydata: error: ";
/// Overrides the default seed when --seed is not given.
inline constexpr const char* kSeedEnvVar = "PROXYDATA_SEED";

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

using std::filesystem::path;

struct EntropyOptions {
  path logits;
  path out;
};

struct SelectOptions {
  path stats;
  std::string method;
  std::size_t k = 0;
  Seed seed = 0;
  path out;
  double beta = kDefaultBeta;
  std::string weight = "w1";
  double bin_width = kDefaultBinWidth;
  double floor = kDefaultFloor;
  bool class_balanced = false;
  std::optional<path> features;
  std::optional<path> correctness;
  std::vector<ExampleId> pool;
};

struct HistogramOptions {
  path stats;
  double bin_width = kDefaultBinWidth;
  double floor = kDefaultFloor;
  path out;
};

struct SplitOptions {
  path selection;
  std::optional<path> stats;
  std::string mode = "allshuffle";
  double ratio = kDefaultSplitRatio;
  Seed seed = 0;
  bool low_to_train = false;
  std::string out_prefix;
};

struct ReportOptions {
  path selection;
  path stats;
  double bin_width = kDefaultBinWidth;
  double floor = kDefaultFloor;
  std::optional<path> out;
};

void cmd_entropy(const EntropyOptions& opts, std::ostream& out);
void cmd_select(const SelectOptions& opts, std::ostream& out);
void cmd_histogram(const HistogramOptions& opts, std::ostream& out);
/// Writes <out_prefix>_train.txt and <out_prefix>_val.txt.
void cmd_split(const SplitOptions& opts, std::ostream& out);
void cmd_report(const ReportOptions& opts, std::ostream& out);

/// Parses argv and runs one subcommand. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace proxydata::cli
