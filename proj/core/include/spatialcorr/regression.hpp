#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "spatialcorr/data.hpp"
#include "spatialcorr/weights.hpp"

namespace spatialcorr {

/// Model variants, all on standardized x and y:
///   ols_simple  y = a + b x + u
///   general     y = a + b x + beta1 nWx + beta2 nWy + u
///   sar         y = a + b x + beta2 nWy + u
///   slx         y = a + b x + beta1 nWx + u
///   pure_sar    y = beta2 nWy + u
///   pure_slx    y = beta1 nWx + u
enum class ModelVariant { kOlsSimple, kGeneral, kSar, kSlx, kPureSar, kPureSlx };

std::string_view variant_name(ModelVariant v) noexcept;
std::optional<ModelVariant> parse_variant(std::string_view name) noexcept;

struct ModelSpec {
  ModelVariant variant = ModelVariant::kGeneral;
  bool include_intercept = true;

  /// Pure variants default to no intercept (a = 0), the others to one.
  static ModelSpec defaults(ModelVariant variant);
};

/// Regressor roles; the column order of a design matrix follows this order.
enum class Term { kIntercept, kX, kLag, kAuto };

/// Coefficient label: a, b, beta1 (lag, on nWx), beta2 (auto, on nWy).
std::string_view term_name(Term t) noexcept;

struct DesignMatrix {
  Matrix columns;
  std::vector<Term> terms;

  Eigen::Index rows() const noexcept { return columns.rows(); }
  Eigen::Index cols() const noexcept { return columns.cols(); }
  bool has_intercept() const noexcept;
};

/// n * W z, the spatially lagged variable scaled as in the model equations.
Vector scaled_spatial_lag(const Matrix& w, const Vector& z);

DesignMatrix build_design_matrix(const ModelSpec& spec,
                                 const StandardizedVector& x,
                                 const StandardizedVector& y,
                                 const SpatialWeightMatrix& w);

struct Coefficient {
  Term term;
  double value = 0.0;
  double standard_error = 0.0;
  double t_value = 0.0;
  double p_value = 1.0;
};

struct RegressionFit {
  std::vector<Coefficient> coefficients;
  Vector response;
  Vector residuals;
  /// (X'X)^-1; multiplied by s^2 it is the coefficient covariance.
  Matrix unscaled_covariance;
  Eigen::Index n = 0;
  Eigen::Index k = 0;
  bool has_intercept = false;

  // Filled in by diagnostics().
  double sigma_u_sq = 0.0;  // (1/n) u'u
  double r_squared = 0.0;
  double reg_std_error = 0.0;  // s = sqrt(SSR / (n - k))
  double f_statistic = 0.0;    // NaN without an intercept
  double durbin_watson = 0.0;  // over input row order; NaN for zero residuals

  const Coefficient* find(Term t) const noexcept;
  /// Value of a coefficient, 0 if the term is not in the model.
  double coefficient(Term t) const noexcept;
};

/// Relative singular-value cut-off below which a design is rank deficient.
inline constexpr double kRankTolerance = 1e-10;

/// Least-squares coefficients and residuals via thin SVD. Diagnostics are
/// left unset. Throws InsufficientData (n <= k), DimensionMismatch, or
/// RankDeficient (sigma_min / sigma_max < kRankTolerance).
RegressionFit least_squares(const DesignMatrix& design, const Vector& response);

/// Completes R^2, s, F, DW, sigma_u^2 and per-coefficient standard errors,
/// t values and two-sided p-values with n - k degrees of freedom. Throws
/// DegenerateVariance if the response is constant.
RegressionFit diagnostics(RegressionFit fit);

/// least_squares followed by diagnostics.
RegressionFit ols_fit(const DesignMatrix& design, const Vector& response);

/// (1/n) u'u.
double residual_variance(const RegressionFit& fit);

/// (1/n) y'u. Equals residual_variance for any least-squares fit since the
/// fitted values are orthogonal to the residuals.
double residual_response_moment(const RegressionFit& fit);

}  // namespace spatialcorr
