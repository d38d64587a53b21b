#include "scimetrics/error.hpp"

namespace scimetrics {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::RulesFileInvalid: return "RulesFileInvalid";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::ZeroWorldRate: return "ZeroWorldRate";
    case ErrorCode::EmptyDenominator: return "EmptyDenominator";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::InsufficientSample: return "InsufficientSample";
    case ErrorCode::DuplicateAssignment: return "DuplicateAssignment";
    case ErrorCode::UnknownCountryCode: return "UnknownCountryCode";
    case ErrorCode::UnassignedCountry: return "UnassignedCountry";
    case ErrorCode::NonPositiveIterations: return "NonPositiveIterations";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

bool Error::is_input_error() const noexcept {
  return code_ != ErrorCode::InvariantViolation;
}

}  // namespace scimetrics
