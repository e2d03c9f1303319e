#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spatialcorr {

enum class ErrorCode {
  kNonPositiveValue,
  kZeroVariance,
  kLengthMismatch,
  kDimensionMismatch,
  kInsufficientData,
  kDuplicateId,
  kNonPositiveDistance,
  kAsymmetricDistance,
  kZeroMatrix,
  kLagOutOfRange,
  kDegenerateRegression,
  kRankDeficient,
  kDegenerateVariance,
  kSingularSystem,
  kZeroDenominator,
  kInvalidArgument,
  kParseError,
  kSchemaError,
  kMissingPair,
  kDuplicatePair,
  kUnknownId,
  kIoError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Input-side failures (bad files, bad arguments) versus numerical ones. The
// CLI maps the former to exit code 1 and the latter to exit code 2.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spatialcorr
