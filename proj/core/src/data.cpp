#include "spatialcorr/data.hpp"

#include <cmath>
#include <unordered_set>

#include "spatialcorr/error.hpp"

namespace spatialcorr {

RawAttributeTable::RawAttributeTable(std::vector<std::string> ids,
                                     Vector x_raw, Vector y_raw)
    : ids_(std::move(ids)), x_raw_(std::move(x_raw)), y_raw_(std::move(y_raw)) {
  if (x_raw_.size() != y_raw_.size() ||
      static_cast<Eigen::Index>(ids_.size()) != x_raw_.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "ids, x and y must have the same length");
  }
  if (x_raw_.size() < 3) {
    throw Error(ErrorCode::kInsufficientData,
                "at least 3 units are required, got " +
                    std::to_string(x_raw_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : ids_) {
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate unit id '" + id + "'");
    }
  }
  if (!x_raw_.allFinite() || !y_raw_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "attribute values must be finite");
  }
}

double mean(const Vector& v) {
  if (v.size() == 0) return 0.0;
  return v.sum() / static_cast<double>(v.size());
}

double population_std(const Vector& v) {
  if (v.size() == 0) return 0.0;
  const double m = mean(v);
  return std::sqrt((v.array() - m).square().sum() /
                   static_cast<double>(v.size()));
}

Vector log_transform(const Vector& raw) {
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    if (!(raw[i] > 0.0)) {
      throw Error(ErrorCode::kNonPositiveValue,
                  "log transform needs strictly positive values; entry " +
                      std::to_string(i) + " is " + std::to_string(raw[i]));
    }
  }
  return raw.array().log().matrix();
}

StandardizedVector zscore(const Vector& raw) {
  if (raw.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "z-score needs at least 2 values");
  }
  const double m = mean(raw);
  const double sd = population_std(raw);
  // A spread this small relative to the magnitude is rounding noise.
  if (!(sd > 0.0) || sd <= 1e-14 * raw.cwiseAbs().maxCoeff()) {
    throw Error(ErrorCode::kZeroVariance,
                "variable is constant and cannot be standardized");
  }
  Vector z = (raw.array() - m) / sd;
  return StandardizedVector(std::move(z));
}

}  // namespace spatialcorr
