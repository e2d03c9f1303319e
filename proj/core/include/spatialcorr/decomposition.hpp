#pragma once

#include <optional>
#include <string_view>

#include "spatialcorr/correlation.hpp"

namespace spatialcorr {

// Closed-form decomposition of the spatial coefficients of
//   y = a + b x + beta1 nWx + beta2 nWy + u
// into correlation statistics. Pre-multiplying by x'/n and y'/n gives
//   [ I_x   I_xy ] [beta1]   [ R - b            ]
//   [ I_yx  I_y  ] [beta2] = [ 1 - R b - sigma_u^2 ]
// which is solved by Cramer's rule: beta1 = O/Q, beta2 = P/Q.

struct DecompositionInput {
  double r = 0.0;           // Pearson R
  double b = 0.0;           // coefficient of x
  double sigma_u_sq = 0.0;  // residual variance (1/n) u'u
  SpatialCorrelationMatrix c;
};

struct Determinants {
  double o = 0.0;
  double p = 0.0;
  double q = 0.0;
};

enum class DecompositionMode { kFull, kNoError, kCanonical };

std::string_view decomposition_mode_name(DecompositionMode m) noexcept;

struct DecompositionResult {
  DecompositionMode mode = DecompositionMode::kFull;
  double beta1 = 0.0;
  double beta2 = 0.0;
  Determinants det;
  DecompositionInput input;
};

/// O = (R-b) I_y - (1-Rb-s2) I_xy, P = I_x (1-Rb-s2) - I_yx (R-b),
/// Q = I_x I_y - I_xy^2.
Determinants cramer_system(const DecompositionInput& input);

/// |Q| <= kSingularTolerance * (|I_x I_y| + I_xy^2) counts as singular.
inline constexpr double kSingularTolerance = 1e-12;

bool is_singular(const SpatialCorrelationMatrix& c) noexcept;

/// beta1 = O/Q, beta2 = P/Q. Throws SingularSystem when Q vanishes (the
/// lag and autoregressive terms are collinear) and InvalidArgument when
/// |R| > 1 or sigma_u^2 < 0.
DecompositionResult decompose_full(const DecompositionInput& input);

/// The full decomposition with sigma_u^2 = 0.
DecompositionResult decompose_no_error(double r, double b,
                                       const SpatialCorrelationMatrix& c);

/// The theoretical case b = R, sigma_u^2 = 0:
///   beta1 = (R^2 - 1) I_xy / Q,  beta2 = (1 - R^2) I_x / Q.
DecompositionResult decompose_canonical(double r,
                                        const SpatialCorrelationMatrix& c);

/// a = -beta1 mean(nWx) - beta2 mean(nWy). Follows from summing the model
/// over units with sum(x) = sum(y) = sum(u) = 0.
double constant_term(double beta1, double beta2, double mean_nwx,
                     double mean_nwy);

struct IdentityCheckReport {
  // beta1 I_x + beta2 I_xy = R - b
  double eq21_left = 0.0;
  double eq21_right = 0.0;
  // beta1 I_yx + beta2 I_y = 1 - R b - sigma_u^2
  double eq22_left = 0.0;
  double eq22_right = 0.0;
  // beta1 I_yx + beta2 I_y = 1 - R b
  double eq24_left = 0.0;
  double eq24_right = 0.0;
  double max_abs_gap = 0.0;  // over eq21 and eq22
};

IdentityCheckReport identity_check(const DecompositionInput& input,
                                   double beta1, double beta2);

struct CollinearityCheck {
  double q = 0.0;
  bool exact_singular = false;
  bool practical_warning = false;
};

inline constexpr double kDefaultCollinearityThreshold = 0.95;

/// Q = I_x I_y - I_xy^2. practical_warning is set when the Pearson
/// correlation of nWx and nWy (if known) exceeds `threshold` in magnitude,
/// or when Q is exactly singular.
CollinearityCheck collinearity_q(
    const SpatialCorrelationMatrix& c,
    std::optional<double> corr_lag_auto = std::nullopt,
    double threshold = kDefaultCollinearityThreshold);

/// Theoretical coefficients of the pure models (not OLS estimates).
/// Pure SAR: beta2 = 1 / I_y. Throws ZeroDenominator if I_y == 0.
double pure_sar_coefficient(const SpatialCorrelationMatrix& c);
/// Pure SLX: beta1 = R / I_x. Throws ZeroDenominator if I_x == 0.
double pure_slx_coefficient(double r, const SpatialCorrelationMatrix& c);

}  // namespace spatialcorr
