#pragma once

// Delimited-text file formats. Every format is comma-separated with LF line
// endings and reals written with 17 significant digits, so
// write -> read -> write is byte-identical.
//
//   logits       id,label,logit_0,...,logit_{d-1}
//   stats        id,label,entropy[,forget_count]
//   features     id,f_0,...,f_{F-1}
//   correctness  id,c_0,...,c_{E-1}           (c in {0,1})
//   histogram    '# key=value' metadata, then
//                bin_index,left_edge_log10,right_edge_log10,height
//   id list      '# key=value' metadata, then one id per line
//                (selection files and split halves)

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "proxydata/types.hpp"

namespace proxydata {

/// `value` with 17 significant digits, as printf("%.17g").
std::string format_real(double value);
/// Strict parse of a full token; invalid-input error otherwise.
double parse_real(std::string_view token);
std::uint64_t parse_unsigned(std::string_view token);

LogitsTable read_logits(std::istream& in);
void write_logits(std::ostream& out, const LogitsTable& table);

StatsTable read_stats(std::istream& in);
void write_stats(std::ostream& out, const StatsTable& table);

std::vector<FeatureRow> read_features(std::istream& in);
void write_features(std::ostream& out, std::span<const FeatureRow> rows);

CorrectnessLog read_correctness(std::istream& in);
void write_correctness(std::ostream& out, const CorrectnessLog& log);

Histogram read_histogram(std::istream& in);
void write_histogram(std::ostream& out, const Histogram& hist);

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct IdList {
  Metadata metadata;
  std::vector<ExampleId> ids;
};

IdList read_id_list(std::istream& in);
void write_id_list(std::ostream& out, const IdList& list);

/// Selection file: metadata method, k, optional seed, then method params.
Selection read_selection(std::istream& in);
void write_selection(std::ostream& out, const Selection& sel);

/// Train or val half of a split as an id list.
IdList split_part(const SplitResult& split, bool train, const Metadata& extra = {});

/// Opens `path` and applies `reader`; io error if the file cannot be opened.
template <typename Reader>
auto read_file(const std::filesystem::path& path, Reader&& reader);

/// Writes through `writer` to `path`, creating or truncating it.
template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer);

}  // namespace proxydata

#include "proxydata/io_inl.hpp"
