#include "proxydata/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "proxydata/error.hpp"

namespace proxydata {
namespace {

// Line reader that tracks 1-based line numbers for diagnostics.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  std::size_t number() const noexcept { return number_; }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::kIo, "line " + std::to_string(number_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename Fn>
auto at_line(const LineReader& reader, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    reader.error(e.detail());
  }
}

// Header "id,<fixed...>,<prefix>0,...,<prefix>{n-1}"; returns n.
std::size_t expect_header(LineReader& reader, std::span<const std::string_view> fixed,
                          std::string_view prefix, std::size_t min_tail,
                          std::string_view format) {
  std::string line;
  if (!reader.next(line)) fail(ErrorKind::kIo, std::string(format) + " file has no rows");
  const auto fields = split_fields(line);
  if (fields.size() < fixed.size() + min_tail) {
    reader.error("expected a " + std::string(format) + " header");
  }
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (fields[i] != fixed[i]) {
      reader.error("header column " + std::to_string(i) + " must be '" + std::string(fixed[i]) +
                   "'");
    }
  }
  const std::size_t tail = fields.size() - fixed.size();
  for (std::size_t j = 0; j < tail; ++j) {
    const std::string want = std::string(prefix) + std::to_string(j);
    if (fields[fixed.size() + j] != want) {
      reader.error("header column " + std::to_string(fixed.size() + j) + " must be '" + want + "'");
    }
  }
  return tail;
}

void write_header(std::ostream& out, std::string_view fixed, std::string_view prefix,
                  std::size_t n) {
  out << fixed;
  for (std::size_t j = 0; j < n; ++j) out << ',' << prefix << j;
  out << '\n';
}

ClassLabel parse_label(std::string_view token) {
  const std::uint64_t v = parse_unsigned(token);
  if (v > std::numeric_limits<ClassLabel>::max()) {
    fail(ErrorKind::kInvalidInput, "label '" + std::string(token) + "' is out of range");
  }
  return static_cast<ClassLabel>(v);
}

void read_metadata_line(std::string_view line, Metadata& meta, const LineReader& reader) {
  std::string_view body = line.substr(1);
  if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
  const std::size_t eq = body.find('=');
  if (eq == std::string_view::npos) reader.error("metadata line must be '# key=value'");
  meta.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
}

void write_metadata(std::ostream& out, const Metadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc()) fail(ErrorKind::kIo, "cannot format real");
  return std::string(buf, ptr);
}

double parse_real(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || token.empty()) {
    fail(ErrorKind::kInvalidInput, "'" + std::string(token) + "' is not a real number");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view token) {
  std::uint64_t value = 0;
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), last, value);
  if (ec != std::errc() || ptr != last || token.empty()) {
    fail(ErrorKind::kInvalidInput, "'" + std::string(token) + "' is not a non-negative integer");
  }
  return value;
}

// ------------------------------------------------------------------ logits

LogitsTable read_logits(std::istream& in) {
  LineReader reader(in);
  constexpr std::string_view kFixed[] = {"id", "label"};
  const std::size_t d = expect_header(reader, kFixed, "logit_", 2, "logits");
  std::vector<LogitsRow> rows;
  std::string line;
  while (reader.next(line)) {
    const auto fields = split_fields(line);
    if (fields.size() != d + 2) {
      reader.error("expected " + std::to_string(d + 2) + " fields, got " +
                   std::to_string(fields.size()));
    }
    rows.push_back(at_line(reader, [&] {
      LogitsRow row;
      row.id = parse_unsigned(fields[0]);
      row.label = parse_label(fields[1]);
      row.logits.reserve(d);
      for (std::size_t j = 0; j < d; ++j) row.logits.push_back(parse_real(fields[2 + j]));
      return row;
    }));
  }
  if (rows.empty()) fail(ErrorKind::kIo, "logits file has no rows");
  return LogitsTable(std::move(rows));
}

void write_logits(std::ostream& out, const LogitsTable& table) {
  write_header(out, "id,label", "logit_", table.dim());
  for (const auto& row : table.rows()) {
    out << row.id << ',' << row.label;
    for (double v : row.logits) out << ',' << format_real(v);
    out << '\n';
  }
}

// ------------------------------------------------------------------- stats

StatsTable read_stats(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line)) fail(ErrorKind::kIo, "stats file has no rows");
  bool with_counts = false;
  if (line == "id,label,entropy,forget_count") {
    with_counts = true;
  } else if (line != "id,label,entropy") {
    reader.error("expected header 'id,label,entropy[,forget_count]'");
  }
  const std::size_t width = with_counts ? 4 : 3;
  std::vector<ExampleStat> rows;
  while (reader.next(line)) {
    const auto fields = split_fields(line);
    if (fields.size() != width) {
      reader.error("expected " + std::to_string(width) + " fields, got " +
                   std::to_string(fields.size()));
    }
    rows.push_back(at_line(reader, [&] {
      ExampleStat row;
      row.id = parse_unsigned(fields[0]);
      row.label = parse_label(fields[1]);
      row.entropy = parse_real(fields[2]);
      if (!std::isfinite(row.entropy) || row.entropy < 0.0) {
        fail(ErrorKind::kInvalidInput, "entropy must be finite and >= 0");
      }
      if (with_counts) {
        const auto count = parse_unsigned(fields[3]);
        if (count > std::numeric_limits<std::uint32_t>::max()) {
          fail(ErrorKind::kInvalidInput, "forget_count is out of range");
        }
        row.forget_count = static_cast<std::uint32_t>(count);
      }
      return row;
    }));
  }
  if (rows.empty()) fail(ErrorKind::kIo, "stats file has no rows");
  return StatsTable::with_inferred_classes(std::move(rows));
}

void write_stats(std::ostream& out, const StatsTable& table) {
  const bool with_counts = table.has_forget_counts();
  out << (with_counts ? "id,label,entropy,forget_count\n" : "id,label,entropy\n");
  for (const auto& row : table.rows()) {
    out << row.id << ',' << row.label << ',' << format_real(row.entropy);
    if (with_counts) out << ',' << *row.forget_count;
    out << '\n';
  }
}

// ---------------------------------------------------------------- features

std::vector<FeatureRow> read_features(std::istream& in) {
  LineReader reader(in);
  constexpr std::string_view kFixed[] = {"id"};
  const std::size_t dim = expect_header(reader, kFixed, "f_", 1, "features");
  std::vector<FeatureRow> rows;
  std::string line;
  while (reader.next(line)) {
    const auto fields = split_fields(line);
    if (fields.size() != dim + 1) {
      reader.error("expected " + std::to_string(dim + 1) + " fields, got " +
                   std::to_string(fields.size()));
    }
    rows.push_back(at_line(reader, [&] {
      FeatureRow row;
      row.id = parse_unsigned(fields[0]);
      row.values.reserve(dim);
      for (std::size_t j = 0; j < dim; ++j) row.values.push_back(parse_real(fields[1 + j]));
      return row;
    }));
  }
  if (rows.empty()) fail(ErrorKind::kIo, "features file has no rows");
  return rows;
}

void write_features(std::ostream& out, std::span<const FeatureRow> rows) {
  write_header(out, "id", "f_", rows.empty() ? 0 : rows.front().values.size());
  for (const auto& row : rows) {
    out << row.id;
    for (double v : row.values) out << ',' << format_real(v);
    out << '\n';
  }
}

// ------------------------------------------------------------- correctness

CorrectnessLog read_correctness(std::istream& in) {
  LineReader reader(in);
  constexpr std::string_view kFixed[] = {"id"};
  const std::size_t epochs = expect_header(reader, kFixed, "c_", 1, "correctness");
  std::vector<CorrectnessRow> rows;
  std::string line;
  while (reader.next(line)) {
    const auto fields = split_fields(line);
    if (fields.size() != epochs + 1) {
      reader.error("expected " + std::to_string(epochs + 1) + " fields, got " +
                   std::to_string(fields.size()));
    }
    CorrectnessRow row;
    row.id = at_line(reader, [&] { return parse_unsigned(fields[0]); });
    row.correct.reserve(epochs);
    for (std::size_t j = 0; j < epochs; ++j) {
      const auto f = fields[1 + j];
      if (f != "0" && f != "1") reader.error("correctness entries must be 0 or 1");
      row.correct.push_back(f == "1");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorKind::kIo, "correctness file has no rows");
  return CorrectnessLog(std::move(rows));
}

void write_correctness(std::ostream& out, const CorrectnessLog& log) {
  write_header(out, "id", "c_", log.epochs());
  for (const auto& row : log.rows()) {
    out << row.id;
    for (bool c : row.correct) out << ',' << (c ? '1' : '0');
    out << '\n';
  }
}

// --------------------------------------------------------------- histogram

Histogram read_histogram(std::istream& in) {
  LineReader reader(in);
  Metadata meta;
  std::string line;
  bool header = false;
  while (reader.next(line)) {
    if (line.front() == '#') {
      read_metadata_line(line, meta, reader);
      continue;
    }
    if (line != "bin_index,left_edge_log10,right_edge_log10,height") {
      reader.error("expected header 'bin_index,left_edge_log10,right_edge_log10,height'");
    }
    header = true;
    break;
  }
  if (!header) fail(ErrorKind::kIo, "histogram file has no header");

  auto lookup = [&](std::string_view key) -> double {
    for (const auto& [k, v] : meta) {
      if (k == key) return parse_real(v);
    }
    fail(ErrorKind::kIo, "histogram file lacks '# " + std::string(key) + "=' metadata");
  };
  const double origin = lookup("origin");
  const double width = lookup("bin_width");
  const double floor = lookup("floor");

  std::vector<std::uint64_t> heights;
  while (reader.next(line)) {
    const auto fields = split_fields(line);
    if (fields.size() != 4) reader.error("expected 4 fields, got " + std::to_string(fields.size()));
    const auto index = at_line(reader, [&] { return parse_unsigned(fields[0]); });
    if (index != heights.size()) reader.error("bin indices must be consecutive from 0");
    heights.push_back(at_line(reader, [&] { return parse_unsigned(fields[3]); }));
  }
  if (heights.empty()) fail(ErrorKind::kIo, "histogram file has no rows");
  return Histogram(origin, width, floor, std::move(heights));
}

void write_histogram(std::ostream& out, const Histogram& hist) {
  write_metadata(out, {{"bin_width", format_real(hist.bin_width())},
                       {"floor", format_real(hist.floor())},
                       {"origin", format_real(hist.origin())},
                       {"total", std::to_string(hist.total())}});
  out << "bin_index,left_edge_log10,right_edge_log10,height\n";
  for (std::size_t b = 0; b < hist.bin_count(); ++b) {
    out << b << ',' << format_real(hist.left_edge(b)) << ',' << format_real(hist.right_edge(b))
        << ',' << hist.height(b) << '\n';
  }
}

// ----------------------------------------------------------------- id list

IdList read_id_list(std::istream& in) {
  LineReader reader(in);
  IdList list;
  std::string line;
  while (reader.next(line)) {
    if (line.front() == '#') {
      if (!list.ids.empty()) reader.error("metadata must precede ids");
      read_metadata_line(line, list.metadata, reader);
      continue;
    }
    list.ids.push_back(at_line(reader, [&] { return parse_unsigned(line); }));
  }
  return list;
}

void write_id_list(std::ostream& out, const IdList& list) {
  write_metadata(out, list.metadata);
  for (ExampleId id : list.ids) out << id << '\n';
}

Selection read_selection(std::istream& in) {
  IdList list = read_id_list(in);
  MethodDescriptor method;
  std::optional<std::size_t> k;
  std::optional<Seed> seed;
  for (auto& [key, value] : list.metadata) {
    if (key == "method") {
      method.name = value;
    } else if (key == "k") {
      k = static_cast<std::size_t>(parse_unsigned(value));
    } else if (key == "seed") {
      seed = parse_unsigned(value);
    } else {
      method.params.emplace_back(key, value);
    }
  }
  if (method.name.empty()) fail(ErrorKind::kIo, "selection file lacks '# method=' metadata");
  if (!k) fail(ErrorKind::kIo, "selection file lacks '# k=' metadata");
  return Selection(std::move(method), std::move(list.ids), *k, seed);
}

void write_selection(std::ostream& out, const Selection& sel) {
  IdList list;
  list.metadata.emplace_back("method", sel.method().name);
  list.metadata.emplace_back("k", std::to_string(sel.k()));
  if (sel.seed()) list.metadata.emplace_back("seed", std::to_string(*sel.seed()));
  for (const auto& p : sel.method().params) list.metadata.push_back(p);
  list.ids.assign(sel.ids().begin(), sel.ids().end());
  write_id_list(out, list);
}

IdList split_part(const SplitResult& split, bool train, const Metadata& extra) {
  IdList list;
  list.metadata.emplace_back("part", train ? "train" : "val");
  list.metadata.emplace_back("mode", std::string(to_string(split.mode())));
  list.metadata.emplace_back("ratio", format_real(split.ratio()));
  list.metadata.insert(list.metadata.end(), extra.begin(), extra.end());
  const auto ids = train ? split.train() : split.val();
  list.ids.assign(ids.begin(), ids.end());
  return list;
}

}  // namespace proxydata
