#include "spatialcorr/error.hpp"

namespace spatialcorr {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNonPositiveValue: return "NonPositiveValue";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kNonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::kAsymmetricDistance: return "AsymmetricDistance";
    case ErrorCode::kZeroMatrix: return "ZeroMatrix";
    case ErrorCode::kLagOutOfRange: return "LagOutOfRange";
    case ErrorCode::kDegenerateRegression: return "DegenerateRegression";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kDegenerateVariance: return "DegenerateVariance";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kMissingPair: return "MissingPair";
    case ErrorCode::kDuplicatePair: return "DuplicatePair";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNonPositiveValue:
    case ErrorCode::kZeroVariance:
    case ErrorCode::kZeroMatrix:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kInsufficientData:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kNonPositiveDistance:
    case ErrorCode::kAsymmetricDistance:
    case ErrorCode::kLagOutOfRange:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParseError:
    case ErrorCode::kSchemaError:
    case ErrorCode::kMissingPair:
    case ErrorCode::kDuplicatePair:
    case ErrorCode::kUnknownId:
    case ErrorCode::kIoError:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

}  // namespace spatialcorr
