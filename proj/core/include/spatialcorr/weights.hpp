#pragma once

#include <string>
#include <vector>

#include "spatialcorr/data.hpp"

namespace spatialcorr {

/// Relative asymmetry |r_ij - r_ji| / max(r_ij, r_ji) tolerated in distance
/// input; anything below is treated as rounding noise and symmetrized.
inline constexpr double kDistanceAsymmetryTolerance = 1e-6;

/// Pairwise distances r_ij (e.g. travel mileage). The diagonal is ignored.
/// Construction throws DimensionMismatch (not square / id count),
/// NonPositiveDistance (off-diagonal <= 0 or non-finite) or
/// AsymmetricDistance (relative asymmetry above tolerance).
class DistanceMatrix {
 public:
  explicit DistanceMatrix(Matrix r, std::vector<std::string> ids = {});

  const Matrix& values() const noexcept { return r_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  Eigen::Index size() const noexcept { return r_.rows(); }

 private:
  Matrix r_;
  std::vector<std::string> ids_;
};

/// Symmetric, zero-diagonal, non-negative proximity matrix V.
class ContiguityMatrix {
 public:
  /// Throws DimensionMismatch or InvalidArgument if the invariants fail.
  explicit ContiguityMatrix(Matrix v);

  const Matrix& values() const noexcept { return v_; }
  Eigen::Index size() const noexcept { return v_.rows(); }

 private:
  Matrix v_;
};

/// Globally normalized weights: symmetric, zero diagonal, entries sum to 1.
class SpatialWeightMatrix {
 public:
  const Matrix& values() const noexcept { return w_; }
  Eigen::Index size() const noexcept { return w_.rows(); }

 private:
  explicit SpatialWeightMatrix(Matrix w) : w_(std::move(w)) {}
  friend SpatialWeightMatrix normalize_global(const ContiguityMatrix& v);

  Matrix w_;
};

/// Step-function contiguity at a fixed time lag scaled by 1/(2n). Its
/// entries sum to (n - lag)/n, not 1.
class TemporalWeightMatrix {
 public:
  const Matrix& values() const noexcept { return w_; }
  Eigen::Index size() const noexcept { return w_.rows(); }
  Eigen::Index lag() const noexcept { return lag_; }

 private:
  TemporalWeightMatrix(Matrix w, Eigen::Index lag)
      : w_(std::move(w)), lag_(lag) {}
  friend TemporalWeightMatrix temporal_weights(const ContiguityMatrix& v,
                                               Eigen::Index n);

  Matrix w_;
  Eigen::Index lag_;
};

/// v_ij = 1/r_ij off the diagonal, 0 on it, symmetrized as (v_ij + v_ji)/2.
ContiguityMatrix inverse_distance_contiguity(const DistanceMatrix& d);

/// w = v / sum(v). Throws ZeroMatrix when v has no positive entry.
SpatialWeightMatrix normalize_global(const ContiguityMatrix& v);

/// v_ij = 1 iff |i - j| == tau. Throws LagOutOfRange unless 1 <= tau <= n-1.
ContiguityMatrix temporal_contiguity(Eigen::Index n, Eigen::Index tau);

/// w = v / (2n) for a matrix produced by temporal_contiguity. Throws
/// InvalidArgument if v is not a single-lag step pattern of size n.
TemporalWeightMatrix temporal_weights(const ContiguityMatrix& v, Eigen::Index n);

}  // namespace spatialcorr
