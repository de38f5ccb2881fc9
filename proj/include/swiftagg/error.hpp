#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swiftagg {

enum class ErrorCode {
  kNoPrimeInInterval,
  kNotPrime,
  kFieldTooLarge,
  kInverseOfZero,
  kDuplicateAbscissa,
  kEmptyInput,
  kDimensionMismatch,
  kEntryOutOfRange,
  kZeroEvaluationPoint,
  kInsufficientEvaluations,
  kIndivisibleGroups,
  kThresholdViolation,
  kBadK,
  kInvalidParams,
  kNotATree,
  kBadRoot,
  kUnknownGroup,
  kTooManyDropouts,
  kConfigInvalid,
  kNonConformingField,
  kSearchSpaceTooLarge,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace swiftagg
