#include "spatialcorr/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spatialcorr/error.hpp"

namespace spatialcorr {

namespace {

void validate(const DecompositionInput& input) {
  if (!(std::abs(input.r) <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::kInvalidArgument,
                "Pearson R must lie in [-1, 1], got " + std::to_string(input.r));
  }
  if (!(input.sigma_u_sq >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "residual variance must be non-negative");
  }
}

DecompositionResult solve(const DecompositionInput& input,
                          DecompositionMode mode) {
  validate(input);
  if (is_singular(input.c)) {
    std::ostringstream msg;
    msg << "Q = I_x I_y - I_xy^2 = " << (input.c.i_x * input.c.i_y -
                                         input.c.i_xy * input.c.i_xy)
        << " vanishes; the lag and autoregressive terms are collinear";
    throw Error(ErrorCode::kSingularSystem, msg.str());
  }
  DecompositionResult result;
  result.mode = mode;
  result.input = input;
  result.det = cramer_system(input);
  result.beta1 = result.det.o / result.det.q;
  result.beta2 = result.det.p / result.det.q;
  return result;
}

}  // namespace

std::string_view decomposition_mode_name(DecompositionMode m) noexcept {
  switch (m) {
    case DecompositionMode::kFull: return "full";
    case DecompositionMode::kNoError: return "no_error";
    case DecompositionMode::kCanonical: return "canonical";
  }
  return "unknown";
}

Determinants cramer_system(const DecompositionInput& input) {
  const auto& c = input.c;
  const double rhs1 = input.r - input.b;
  const double rhs2 = 1.0 - input.r * input.b - input.sigma_u_sq;
  Determinants d;
  d.o = rhs1 * c.i_y - rhs2 * c.i_xy;
  d.p = c.i_x * rhs2 - c.i_yx * rhs1;
  d.q = c.i_x * c.i_y - c.i_xy * c.i_xy;
  return d;
}

bool is_singular(const SpatialCorrelationMatrix& c) noexcept {
  const double prod = c.i_x * c.i_y;
  const double sq = c.i_xy * c.i_xy;
  return std::abs(prod - sq) <= kSingularTolerance * (std::abs(prod) + sq);
}

DecompositionResult decompose_full(const DecompositionInput& input) {
  return solve(input, DecompositionMode::kFull);
}

DecompositionResult decompose_no_error(double r, double b,
                                       const SpatialCorrelationMatrix& c) {
  return solve(DecompositionInput{r, b, 0.0, c}, DecompositionMode::kNoError);
}

DecompositionResult decompose_canonical(double r,
                                        const SpatialCorrelationMatrix& c) {
  return solve(DecompositionInput{r, r, 0.0, c}, DecompositionMode::kCanonical);
}

double constant_term(double beta1, double beta2, double mean_nwx,
                     double mean_nwy) {
  return -beta1 * mean_nwx - beta2 * mean_nwy;
}

IdentityCheckReport identity_check(const DecompositionInput& input,
                                   double beta1, double beta2) {
  const auto& c = input.c;
  IdentityCheckReport rep;
  rep.eq21_left = beta1 * c.i_x + beta2 * c.i_xy;
  rep.eq21_right = input.r - input.b;
  rep.eq22_left = beta1 * c.i_yx + beta2 * c.i_y;
  rep.eq22_right = 1.0 - input.r * input.b - input.sigma_u_sq;
  rep.eq24_left = rep.eq22_left;
  rep.eq24_right = 1.0 - input.r * input.b;
  rep.max_abs_gap = std::max(std::abs(rep.eq21_left - rep.eq21_right),
                             std::abs(rep.eq22_left - rep.eq22_right));
  return rep;
}

CollinearityCheck collinearity_q(const SpatialCorrelationMatrix& c,
                                 std::optional<double> corr_lag_auto,
                                 double threshold) {
  CollinearityCheck check;
  check.q = c.i_x * c.i_y - c.i_xy * c.i_xy;
  check.exact_singular = is_singular(c);
  check.practical_warning =
      check.exact_singular ||
      (corr_lag_auto.has_value() && std::abs(*corr_lag_auto) > threshold);
  return check;
}

double pure_sar_coefficient(const SpatialCorrelationMatrix& c) {
  if (c.i_y == 0.0) {
    throw Error(ErrorCode::kZeroDenominator,
                "I_y = 0: the pure autoregressive coefficient 1/I_y is undefined");
  }
  return 1.0 / c.i_y;
}

double pure_slx_coefficient(double r, const SpatialCorrelationMatrix& c) {
  if (c.i_x == 0.0) {
    throw Error(ErrorCode::kZeroDenominator,
                "I_x = 0: the pure lag coefficient R/I_x is undefined");
  }
  return r / c.i_x;
}

}  // namespace spatialcorr
