#pragma once

#include <cstdint>
#include <string_view>

#include "spatialcorr/data.hpp"
#include "spatialcorr/weights.hpp"

namespace spatialcorr {

// Correlation statistics written as quadratic and bilinear forms on
// standardized variables. Every weight-taking function has an overload on a
// plain matrix so that unnormalized or temporal weights can be used too; those
// overloads only check dimensions.

/// (1/n) x'y.
double pearson_r(const StandardizedVector& x, const StandardizedVector& y);

/// (1/n) X'X for X = [x y].
Eigen::Matrix2d pearson_matrix(const StandardizedVector& x,
                               const StandardizedVector& y);

/// Moran's index z'Wz.
double morans_index(const StandardizedVector& z, const SpatialWeightMatrix& w);
double morans_index(const StandardizedVector& z, const Matrix& w);

/// Spatial cross-correlation x'Wy.
double cross_correlation(const StandardizedVector& x,
                         const StandardizedVector& y,
                         const SpatialWeightMatrix& w);
double cross_correlation(const StandardizedVector& x,
                         const StandardizedVector& y, const Matrix& w);

/// C = X'WX laid out as [[i_x, i_xy], [i_yx, i_y]].
struct SpatialCorrelationMatrix {
  double i_x = 0.0;
  double i_xy = 0.0;
  double i_yx = 0.0;
  double i_y = 0.0;

  Eigen::Matrix2d as_matrix() const;
};

SpatialCorrelationMatrix spatial_correlation_matrix(
    const StandardizedVector& x, const StandardizedVector& y,
    const SpatialWeightMatrix& w);
SpatialCorrelationMatrix spatial_correlation_matrix(
    const StandardizedVector& x, const StandardizedVector& y, const Matrix& w);

/// Moran's index of z-scored residuals, i.e. eps'W eps / var(eps) with the
/// population variance. Throws ZeroVariance for a perfect fit.
double residual_moran(const Vector& eps, const SpatialWeightMatrix& w);
double residual_moran(const Vector& eps, const Matrix& w);

enum class TestMethod { kRegressionT, kPermutation };

std::string_view test_method_name(TestMethod m) noexcept;

/// Significance of one correlation index. For the permutation method
/// slope_se and t_value are NaN.
struct CorrelationTest {
  double statistic = 0.0;
  double slope_se = 0.0;
  double t_value = 0.0;
  double p_value = 1.0;
  TestMethod method = TestMethod::kRegressionT;
};

/// Regresses n W z2 on z1 (with intercept). The slope equals z1'Wz2 and is
/// tested with a two-sided t-test on n - 2 degrees of freedom. Throws
/// InsufficientData for n < 4.
CorrelationTest significance_by_regression(const StandardizedVector& z1,
                                           const StandardizedVector& z2,
                                           const SpatialWeightMatrix& w);
CorrelationTest significance_by_regression(const StandardizedVector& z1,
                                           const StandardizedVector& z2,
                                           const Matrix& w);

inline constexpr int kMinPermutations = 99;

/// Pseudo p-value (1 + #{|stat_perm| >= |stat_obs|}) / (permutations + 1)
/// under random relabelling of z2. Permutation i is drawn from a generator
/// seeded by (seed, i), so the result does not depend on `threads`
/// (0 = hardware concurrency). Throws InvalidArgument for fewer than
/// kMinPermutations permutations.
CorrelationTest significance_by_permutation(const StandardizedVector& z1,
                                            const StandardizedVector& z2,
                                            const SpatialWeightMatrix& w,
                                            int permutations,
                                            std::uint64_t seed,
                                            unsigned threads = 1);
CorrelationTest significance_by_permutation(const StandardizedVector& z1,
                                            const StandardizedVector& z2,
                                            const Matrix& w, int permutations,
                                            std::uint64_t seed,
                                            unsigned threads = 1);

/// Lag-tau autocorrelation of a standardized series as z'W_tau z with the
/// temporal weights of temporal_weights(). Throws LagOutOfRange.
double temporal_acf(const StandardizedVector& z, Eigen::Index tau);

}  // namespace spatialcorr
