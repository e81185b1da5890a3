#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spm {

enum class ErrorCode {
  ParseError,
  MissingKey,
  UnknownUnit,
  NonPositiveValue,
  StoichiometryOrderViolation,
  TooFewNodes,
  IndexOutOfRange,
  LengthMismatch,
  SingularFit,
  ZeroPivot,
  StepSizeUnderflow,
  MaxStepsExceeded,
  IntegrationFailure,
  DegenerateSurface,
  NonMonotoneTime,
  ZeroReferenceSample,
  AllEvaluationsFailed,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library carries one of the codes above so
/// callers (CLI exit codes, PSO scoring) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spm
