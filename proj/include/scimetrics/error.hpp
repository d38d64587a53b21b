#pragma once

#include <stdexcept>
#include <string>

namespace scimetrics {

enum class ErrorCode {
  MissingColumn,
  MalformedRow,
  EmptyFile,
  IoFailure,
  RulesFileInvalid,
  ZeroBaseline,
  ZeroWorldRate,
  EmptyDenominator,
  AllZero,
  EmptyList,
  InsufficientSample,
  DuplicateAssignment,
  UnknownCountryCode,
  UnassignedCountry,
  NonPositiveIterations,
  InvalidArgument,
  InvariantViolation,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI, the Python module) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

  /// True for failures caused by bad input rather than a broken invariant.
  bool is_input_error() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace scimetrics
