#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include "proxydata/entropy.hpp"
#include "proxydata/error.hpp"
#include "proxydata/io.hpp"
#include "proxydata/report.hpp"

namespace proxydata::cli {
namespace {

StatsTable load_stats(const path& p) {
  return read_file(p, [](std::istream& in) { return read_stats(in); });
}

Selection load_selection(const path& p) {
  return read_file(p, [](std::istream& in) { return read_selection(in); });
}

[[noreturn]] void usage(const std::string& what) { fail(ErrorKind::kUsage, what); }

}  // namespace

void cmd_entropy(const EntropyOptions& opts, std::ostream& out) {
  const LogitsTable logits = read_file(opts.logits, [](std::istream& in) { return read_logits(in); });
  const StatsTable stats = compute_entropy_table(logits);
  write_file(opts.out, [&](std::ostream& os) { write_stats(os, stats); });

  double lo = stats[0].entropy;
  double hi = lo;
  long double sum = 0.0L;
  for (const auto& row : stats.rows()) {
    lo = std::min(lo, row.entropy);
    hi = std::max(hi, row.entropy);
    sum += row.entropy;
  }
  out << "rows=" << stats.size() << " entropy_min=" << format_real(lo)
      << " entropy_mean=" << format_real(static_cast<double>(sum / stats.size()))
      << " entropy_max=" << format_real(hi) << '\n';
}

void cmd_select(const SelectOptions& opts, std::ostream& out) {
  MethodSpec spec;
  spec.method = parse_method(opts.method);
  spec.beta = opts.beta;
  spec.bin_width = opts.bin_width;
  spec.floor = opts.floor;
  spec.pool = opts.pool;
  try {
    spec.weight = parse_weight_scheme(opts.weight);
  } catch (const Error& e) {
    usage(e.detail());
  }

  StatsTable stats = load_stats(opts.stats);
  if (spec.method == Method::kForgetting) {
    if (opts.correctness) {
      const auto log =
          read_file(*opts.correctness, [](std::istream& in) { return read_correctness(in); });
      stats = attach_forget_counts(stats, count_forgetting_events(log));
    } else if (!stats.has_forget_counts()) {
      usage("--method forgetting needs --correctness or a forget_count column in the stats file");
    }
  }
  if (spec.method == Method::kKCenter) {
    if (!opts.features) usage("--method kcenter needs --features");
    const auto features =
        read_file(*opts.features, [](std::istream& in) { return read_features(in); });
    stats = attach_features(stats, features);
  }
  if (opts.class_balanced && spec.method == Method::kKCenter) {
    usage("--class-balanced cannot be combined with --method kcenter");
  }

  const Selection sel = opts.class_balanced
                            ? select_class_balanced(spec, stats, opts.k, opts.seed)
                            : select(spec, stats, opts.k, opts.seed);
  write_file(opts.out, [&](std::ostream& os) { write_selection(os, sel); });
  out << "selected " << sel.k() << " of " << stats.size() << " examples with "
      << sel.method().name << " -> " << opts.out.string() << '\n';
}

void cmd_histogram(const HistogramOptions& opts, std::ostream& out) {
  const StatsTable stats = load_stats(opts.stats);
  const Histogram hist = build_histogram(stats, opts.bin_width, opts.floor);
  write_file(opts.out, [&](std::ostream& os) { write_histogram(os, hist); });
  out << "bins=" << hist.bin_count() << " nonempty=" << hist.nonempty_bin_count()
      << " total=" << hist.total() << '\n';
}

void cmd_split(const SplitOptions& opts, std::ostream& out) {
  SplitMode mode;
  try {
    mode = parse_split_mode(opts.mode);
  } catch (const Error& e) {
    usage(e.detail());
  }
  const Selection sel = load_selection(opts.selection);
  std::optional<StatsTable> stats;
  if (opts.stats) stats = load_stats(*opts.stats);

  Metadata extra{{"source_method", sel.method().name}};
  std::optional<SplitResult> split;
  if (mode == SplitMode::kDisjoint) {
    if (!stats) usage("--mode disjoint needs --stats (entropies are required)");
    split = split_disjoint(sel, *stats, opts.ratio, opts.low_to_train);
    extra.emplace_back("low_to_train", opts.low_to_train ? "1" : "0");
  } else {
    split = stats ? split_allshuffle(sel, *stats, opts.ratio, opts.seed)
                  : split_allshuffle(sel, opts.ratio, opts.seed);
    extra.emplace_back("seed", std::to_string(opts.seed));
  }

  const path train_path = opts.out_prefix + "_train.txt";
  const path val_path = opts.out_prefix + "_val.txt";
  write_file(train_path, [&](std::ostream& os) { write_id_list(os, split_part(*split, true, extra)); });
  write_file(val_path, [&](std::ostream& os) { write_id_list(os, split_part(*split, false, extra)); });
  out << "train=" << split->train().size() << " -> " << train_path.string()
      << " val=" << split->val().size() << " -> " << val_path.string() << '\n';
}

void cmd_report(const ReportOptions& opts, std::ostream& out) {
  const StatsTable stats = load_stats(opts.stats);
  const Selection sel = load_selection(opts.selection);
  const SubsetReport report = make_report(sel, stats, opts.bin_width, opts.floor);
  if (opts.out) {
    write_file(*opts.out, [&](std::ostream& os) { write_report(os, report); });
    out << "subset_size=" << report.subset_size << " tail_mass=" << format_real(report.tail_mass)
        << " -> " << opts.out->string() << '\n';
  } else {
    write_report(out, report);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build proxy datasets from per-example classifier statistics", "proxydata"};
  app.require_subcommand(1);

  EntropyOptions entropy_opts;
  auto* entropy_cmd = app.add_subcommand("entropy", "Compute per-example entropy from logits");
  entropy_cmd->add_option("--logits", entropy_opts.logits, "Logits file")->required();
  entropy_cmd->add_option("--out", entropy_opts.out, "Stats file to write")->required();

  SelectOptions select_opts;
  auto* select_cmd = app.add_subcommand("select", "Select a proxy subset");
  select_cmd->add_option("--stats", select_opts.stats, "Stats file")->required();
  select_cmd->add_option("--method", select_opts.method,
                         "random|entropy-top|entropy-bottom|forgetting|kcenter|tail|prob")
      ->required();
  select_cmd->add_option("--k", select_opts.k, "Subset size")->required();
  auto* select_seed = select_cmd->add_option("--seed", select_opts.seed, "Random seed (default 0)");
  select_cmd->add_option("--out", select_opts.out, "Selection file to write")->required();
  select_cmd->add_option("--beta", select_opts.beta, "Low-entropy share for tail")
      ->capture_default_str();
  select_cmd->add_option("--weight", select_opts.weight, "w1|w2|w3 for prob")->capture_default_str();
  select_cmd->add_option("--bin-width", select_opts.bin_width, "log10 bin width for prob")
      ->capture_default_str();
  select_cmd->add_option("--floor", select_opts.floor, "Entropy clamp before log10")
      ->capture_default_str();
  select_cmd->add_flag("--class-balanced", select_opts.class_balanced,
                       "Apply the method per class with balanced quotas");
  select_cmd->add_option("--features", select_opts.features, "Features file for kcenter");
  select_cmd->add_option("--correctness", select_opts.correctness,
                         "Correctness log for forgetting");
  select_cmd->add_option("--pool", select_opts.pool, "Initial k-center pool ids")->delimiter(',');

  HistogramOptions hist_opts;
  auto* hist_cmd = app.add_subcommand("histogram", "Log-scale entropy histogram");
  hist_cmd->add_option("--stats", hist_opts.stats, "Stats file")->required();
  hist_cmd->add_option("--bin-width", hist_opts.bin_width, "log10 bin width")->capture_default_str();
  hist_cmd->add_option("--floor", hist_opts.floor, "Entropy clamp before log10")
      ->capture_default_str();
  hist_cmd->add_option("--out", hist_opts.out, "Histogram file to write")->required();

  SplitOptions split_opts;
  auto* split_cmd = app.add_subcommand("split", "Split a selection into train/val");
  split_cmd->add_option("--selection", split_opts.selection, "Selection file")->required();
  split_cmd->add_option("--stats", split_opts.stats, "Stats file (required for disjoint)");
  split_cmd->add_option("--mode", split_opts.mode, "allshuffle|disjoint")->capture_default_str();
  split_cmd->add_option("--ratio", split_opts.ratio, "Train share in (0,1)")->capture_default_str();
  auto* split_seed = split_cmd->add_option("--seed", split_opts.seed, "Random seed (default 0)");
  split_cmd->add_flag("--low-to-train", split_opts.low_to_train,
                      "disjoint: low-entropy end goes to train");
  split_cmd->add_option("--out-prefix", split_opts.out_prefix, "Output prefix")->required();

  ReportOptions report_opts;
  auto* report_cmd = app.add_subcommand("report", "Composition report of a selection");
  report_cmd->add_option("--selection", report_opts.selection, "Selection file")->required();
  report_cmd->add_option("--stats", report_opts.stats, "Stats file")->required();
  report_cmd->add_option("--bin-width", report_opts.bin_width, "log10 bin width")
      ->capture_default_str();
  report_cmd->add_option("--floor", report_opts.floor, "Entropy clamp before log10")
      ->capture_default_str();
  report_cmd->add_option("--out", report_opts.out, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto env_seed = [&](CLI::Option* flag, Seed& seed) {
    if (flag->count() > 0) return;
    if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
      try {
        seed = parse_unsigned(env);
      } catch (const Error&) {
        usage(std::string(kSeedEnvVar) + " must be a non-negative integer");
      }
    }
  };

  try {
    if (*entropy_cmd) {
      cmd_entropy(entropy_opts, out);
    } else if (*select_cmd) {
      env_seed(select_seed, select_opts.seed);
      cmd_select(select_opts, out);
    } else if (*hist_cmd) {
      cmd_histogram(hist_opts, out);
    } else if (*split_cmd) {
      env_seed(split_seed, split_opts.seed);
      cmd_split(split_opts, out);
    } else if (*report_cmd) {
      cmd_report(report_opts, out);
    }
  } catch (const Error& e) {
    err << kErrorPrefix << e.what() << '\n';
    return e.kind() == ErrorKind::kUsage ? kExitUsage : kExitError;
  } catch (const std::exception& e) {
    err << kErrorPrefix << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace proxydata::cli
