#pragma once

#include <stdexcept>
#include <string>

namespace qbm {

/// Failure categories shared by every module and mirrored one-to-one by the
/// status codes of the C API.
enum class ErrorCode {
  InvalidArgument = 1,
  DivisionByZero,
  PoleAtOne,
  PrecisionLoss,
  NotPAdicInteger,
  NotInvertible,
  DegenerateEquation,
  Config,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qbm
