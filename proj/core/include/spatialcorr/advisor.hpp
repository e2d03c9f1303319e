#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "spatialcorr/correlation.hpp"
#include "spatialcorr/regression.hpp"

namespace spatialcorr {

/// What the fallback ranking needs from a fitted SAR or SLX model.
struct ModelFitSummary {
  double reg_std_error = 0.0;
  double spatial_p_value = 1.0;  // p-value of beta2 (SAR) or beta1 (SLX)
};

struct CorrelationEvidence {
  CorrelationTest test_ix;
  CorrelationTest test_iy;
  CorrelationTest test_ixy;
  CorrelationTest test_iyx;
  double q = 0.0;
  double corr_lag_auto = 0.0;  // Pearson correlation of nWx and nWy
  double alpha = 0.05;
  double collinearity_threshold = 0.95;
  std::optional<ModelFitSummary> sar_fit;
  std::optional<ModelFitSummary> slx_fit;
};

enum class AdvisorRule { kGeneral, kSpecialSar, kSpecialSlx, kFallbackComprehensive };

std::string_view advisor_rule_name(AdvisorRule r) noexcept;

struct AdvisorDecision {
  ModelVariant recommended = ModelVariant::kSar;
  AdvisorRule rule_fired = AdvisorRule::kFallbackComprehensive;
  std::string rationale;
  bool collinearity_flag = false;
};

/// Model selection from the significance of the correlation indexes. A
/// condition "I != 0" means p <= alpha. Rows are tried in order:
///   general      I_x != 0, I_xy != 0, Q != 0
///   special_sar  I_x != 0, I_y != 0, I_xy = 0
///   special_slx  I_x = 0, I_xy != 0
/// and fallback_comprehensive otherwise. I_xy counts as significant when
/// either directional test (xy or yx) is. Collinearity (|corr(nWx, nWy)|
/// above threshold, or Q exactly singular) demotes general to the better
/// of SAR and SLX. Throws InvalidArgument for alpha or p-values outside
/// their ranges.
AdvisorDecision select_model(const CorrelationEvidence& evidence);

std::string narrative_report(const AdvisorDecision& decision,
                             const CorrelationEvidence& evidence);

}  // namespace spatialcorr
