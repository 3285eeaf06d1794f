#include "evscurve/error.hpp"

namespace evscurve {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::validation: return "validation";
    case ErrorCode::duplicate: return "duplicate";
    case ErrorCode::domain: return "domain";
    case ErrorCode::undefined_share: return "undefined_share";
    case ErrorCode::insufficient_data: return "insufficient_data";
    case ErrorCode::degenerate_abscissa: return "degenerate_abscissa";
    case ErrorCode::no_crossing: return "no_crossing";
    case ErrorCode::no_data: return "no_data";
    case ErrorCode::range: return "range";
    case ErrorCode::mixed_thresholds: return "mixed_thresholds";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

InsufficientDataError::InsufficientDataError(std::size_t n_usable)
    : Error(ErrorCode::insufficient_data,
            "insufficient data: " + std::to_string(n_usable) + " usable observations, at least 3 required"),
      n_usable_(n_usable) {}

}  // namespace evscurve
