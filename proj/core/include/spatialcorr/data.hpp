#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace spatialcorr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raw per-unit attributes before any transformation: x is the explanatory
/// size measure and y the response. Construction validates the table.
class RawAttributeTable {
 public:
  /// Throws InsufficientData (n < 3), LengthMismatch, DuplicateId, or
  /// InvalidArgument for non-finite values.
  RawAttributeTable(std::vector<std::string> ids, Vector x_raw, Vector y_raw);

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const Vector& x_raw() const noexcept { return x_raw_; }
  const Vector& y_raw() const noexcept { return y_raw_; }
  Eigen::Index size() const noexcept { return x_raw_.size(); }

 private:
  std::vector<std::string> ids_;
  Vector x_raw_;
  Vector y_raw_;
};

/// A z-scored vector: mean 0 and population standard deviation 1, so that
/// z'z = n. Only obtainable through zscore().
class StandardizedVector {
 public:
  const Vector& values() const noexcept { return values_; }
  Eigen::Index size() const noexcept { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }

  StandardizedVector operator-() const { return StandardizedVector(-values_); }

 private:
  explicit StandardizedVector(Vector values) : values_(std::move(values)) {}
  friend StandardizedVector zscore(const Vector& raw);

  Vector values_;
};

double mean(const Vector& v);

/// Divide-by-n standard deviation.
double population_std(const Vector& v);

/// Element-wise natural log; throws NonPositiveValue on any entry <= 0.
Vector log_transform(const Vector& raw);

/// (raw - mean) / population_std. Throws InsufficientData for n < 2 and
/// ZeroVariance for a constant input.
StandardizedVector zscore(const Vector& raw);

}  // namespace spatialcorr
