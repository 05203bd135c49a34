#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace proxydata {

enum class ErrorKind {
  kInvalidInput,  // a value or table violates a documented invariant
  kCapacity,      // not enough candidates to satisfy the request
  kConsistency,   // two inputs disagree with each other
  kIo,            // file could not be opened or parsed
  kUsage,         // command-line misuse
};

std::string_view to_string(ErrorKind kind) noexcept;

/// All library failures are reported through this type. what() is
/// "<kind>: <detail>", e.g. "invalid input: duplicate id 7".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

}  // namespace proxydata
