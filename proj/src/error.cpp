#include "swiftagg/error.hpp"

namespace swiftagg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoPrimeInInterval: return "NoPrimeInInterval";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kFieldTooLarge: return "FieldTooLarge";
    case ErrorCode::kInverseOfZero: return "InverseOfZero";
    case ErrorCode::kDuplicateAbscissa: return "DuplicateAbscissa";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::kZeroEvaluationPoint: return "ZeroEvaluationPoint";
    case ErrorCode::kInsufficientEvaluations: return "InsufficientEvaluations";
    case ErrorCode::kIndivisibleGroups: return "IndivisibleGroups";
    case ErrorCode::kThresholdViolation: return "ThresholdViolation";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kNotATree: return "NotATree";
    case ErrorCode::kBadRoot: return "BadRoot";
    case ErrorCode::kUnknownGroup: return "UnknownGroup";
    case ErrorCode::kTooManyDropouts: return "TooManyDropouts";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kNonConformingField: return "NonConformingField";
    case ErrorCode::kSearchSpaceTooLarge: return "SearchSpaceTooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace swiftagg
