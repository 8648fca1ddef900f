#include "qbm/error.hpp"

namespace qbm {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::DivisionByZero:
      return "DivisionByZero";
    case ErrorCode::PoleAtOne:
      return "PoleAtOne";
    case ErrorCode::PrecisionLoss:
      return "PrecisionLoss";
    case ErrorCode::NotPAdicInteger:
      return "NotPAdicInteger";
    case ErrorCode::NotInvertible:
      return "NotInvertible";
    case ErrorCode::DegenerateEquation:
      return "DegenerateEquation";
    case ErrorCode::Config:
      return "Config";
  }
  return "Unknown";
}

}  // namespace qbm
