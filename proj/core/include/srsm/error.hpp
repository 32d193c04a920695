#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace srsm {

enum class ErrorCode {
  InvalidArgument,
  DimMismatch,
  EmptyCloud,
  EmptySparse,
  NonFinite,
  Unstable,
  SingularOperator,
  DegenerateNormal,
  Diverged,
  Collapsed,
  MissingBand,
  MissingInput,
  ConfigError,
  FormatError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code; every module reports failures through it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace srsm
