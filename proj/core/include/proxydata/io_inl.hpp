#pragma once

#include <fstream>

#include "proxydata/error.hpp"

namespace proxydata {

template <typename Reader>
auto read_file(const std::filesystem::path& path, Reader&& reader) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open '" + path.string() + "' for reading");
  try {
    return reader(in);
  } catch (const Error& e) {
    fail(e.kind(), path.string() + ": " + e.detail());
  }
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) fail(ErrorKind::kIo, "failed writing '" + path.string() + "'");
}

}  // namespace proxydata
