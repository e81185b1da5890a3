#include "spm/error.hpp"

namespace spm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::UnknownUnit: return "UnknownUnit";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::StoichiometryOrderViolation: return "StoichiometryOrderViolation";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SingularFit: return "SingularFit";
    case ErrorCode::ZeroPivot: return "ZeroPivot";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::MaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::DegenerateSurface: return "DegenerateSurface";
    case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::ZeroReferenceSample: return "ZeroReferenceSample";
    case ErrorCode::AllEvaluationsFailed: return "AllEvaluationsFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace spm
