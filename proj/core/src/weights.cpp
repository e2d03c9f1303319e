#include "spatialcorr/weights.hpp"

#include <algorithm>
#include <cmath>

#include "spatialcorr/error.hpp"

namespace spatialcorr {

namespace {

std::string cell(Eigen::Index i, Eigen::Index j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

DistanceMatrix::DistanceMatrix(Matrix r, std::vector<std::string> ids)
    : r_(std::move(r)), ids_(std::move(ids)) {
  if (r_.rows() != r_.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "distance matrix is not square");
  }
  if (!ids_.empty() && static_cast<Eigen::Index>(ids_.size()) != r_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "distance matrix size does not match id count");
  }
  const Eigen::Index n = r_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double rij = r_(i, j);
      if (!std::isfinite(rij) || rij <= 0.0) {
        throw Error(ErrorCode::kNonPositiveDistance,
                    "distance at " + cell(i, j) + " must be positive, got " +
                        std::to_string(rij));
      }
      if (j > i) {
        const double rji = r_(j, i);
        const double scale = std::max(rij, rji);
        if (std::abs(rij - rji) > kDistanceAsymmetryTolerance * scale) {
          throw Error(ErrorCode::kAsymmetricDistance,
                      "r" + cell(i, j) + " = " + std::to_string(rij) +
                          " differs from r" + cell(j, i) + " = " +
                          std::to_string(rji));
        }
      }
    }
  }
}

ContiguityMatrix::ContiguityMatrix(Matrix v) : v_(std::move(v)) {
  if (v_.rows() != v_.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "contiguity matrix is not square");
  }
  const Eigen::Index n = v_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (v_(i, i) != 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "contiguity diagonal must be zero at " + cell(i, i));
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (!(v_(i, j) >= 0.0) || !std::isfinite(v_(i, j))) {
        throw Error(ErrorCode::kInvalidArgument,
                    "contiguity entries must be finite and non-negative at " +
                        cell(i, j));
      }
      if (v_(i, j) != v_(j, i)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "contiguity matrix is not symmetric at " + cell(i, j));
      }
    }
  }
}

ContiguityMatrix inverse_distance_contiguity(const DistanceMatrix& d) {
  const Matrix& r = d.values();
  const Eigen::Index n = r.rows();
  Matrix v = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double vij = 0.5 * (1.0 / r(i, j) + 1.0 / r(j, i));
      v(i, j) = vij;
      v(j, i) = vij;
    }
  }
  return ContiguityMatrix(std::move(v));
}

SpatialWeightMatrix normalize_global(const ContiguityMatrix& v) {
  const double total = v.values().sum();
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kZeroMatrix,
                "contiguity matrix has no positive entries");
  }
  Matrix w = v.values() / total;
  return SpatialWeightMatrix(std::move(w));
}

ContiguityMatrix temporal_contiguity(Eigen::Index n, Eigen::Index tau) {
  if (n < 2 || tau < 1 || tau > n - 1) {
    throw Error(ErrorCode::kLagOutOfRange,
                "lag " + std::to_string(tau) + " outside [1, " +
                    std::to_string(n - 1) + "]");
  }
  Matrix v = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i + tau < n; ++i) {
    v(i, i + tau) = 1.0;
    v(i + tau, i) = 1.0;
  }
  return ContiguityMatrix(std::move(v));
}

TemporalWeightMatrix temporal_weights(const ContiguityMatrix& v,
                                      Eigen::Index n) {
  const Matrix& m = v.values();
  if (m.rows() != n || n < 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "temporal contiguity size does not match n");
  }
  Eigen::Index lag = 0;
  for (Eigen::Index j = 1; j < n; ++j) {
    if (m(0, j) != 0.0) {
      lag = j;
      break;
    }
  }
  if (lag == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "matrix is not a temporal step-function contiguity pattern");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double expected = (std::abs(i - j) == lag) ? 1.0 : 0.0;
      if (m(i, j) != expected) {
        throw Error(ErrorCode::kInvalidArgument,
                    "matrix is not a temporal step-function contiguity "
                    "pattern at " + cell(i, j));
      }
    }
  }
  return TemporalWeightMatrix(m / (2.0 * static_cast<double>(n)), lag);
}

}  // namespace spatialcorr
