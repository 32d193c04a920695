#include "srsm/error.hpp"

namespace srsm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::EmptySparse: return "EmptySparse";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::DegenerateNormal: return "DegenerateNormal";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::Collapsed: return "Collapsed";
    case ErrorCode::MissingBand: return "MissingBand";
    case ErrorCode::MissingInput: return "MissingInput";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace srsm
