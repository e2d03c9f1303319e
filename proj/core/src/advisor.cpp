#include "spatialcorr/advisor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "spatialcorr/decomposition.hpp"
#include "spatialcorr/error.hpp"

namespace spatialcorr {

namespace {

std::string fixed4(double v) {
  if (std::isnan(v)) return "undefined";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void check_p(const CorrelationTest& t, const char* name) {
  if (!(t.p_value >= 0.0 && t.p_value <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("p-value of ") + name + " must lie in [0, 1]");
  }
}

struct Flags {
  bool sig_x;
  bool sig_y;
  bool sig_xy;
  bool singular;
  bool collinear;
};

Flags evaluate(const CorrelationEvidence& e) {
  Flags f{};
  f.sig_x = e.test_ix.p_value <= e.alpha;
  f.sig_y = e.test_iy.p_value <= e.alpha;
  f.sig_xy = std::min(e.test_ixy.p_value, e.test_iyx.p_value) <= e.alpha;
  const SpatialCorrelationMatrix c{e.test_ix.statistic, e.test_ixy.statistic,
                                   e.test_iyx.statistic, e.test_iy.statistic};
  f.singular = is_singular(c) || e.q == 0.0;
  f.collinear = f.singular || std::abs(e.corr_lag_auto) > e.collinearity_threshold;
  return f;
}

// Chooses between SAR and SLX. With fitted models: lower regression standard
// error wins, then the smaller p-value of the kept spatial coefficient.
// Without them: beta1 is proportional to I_xy and beta2 to I_x in the
// theoretical decomposition, so an insignificant I_xy drops the lag term and
// an insignificant I_x drops the autoregressive one.
ModelVariant better_of_sar_slx(const CorrelationEvidence& e, const Flags& f,
                               std::string& why) {
  if (e.sar_fit && e.slx_fit) {
    const double s_sar = e.sar_fit->reg_std_error;
    const double s_slx = e.slx_fit->reg_std_error;
    if (std::abs(s_sar - s_slx) > 1e-9 * std::max(s_sar, s_slx)) {
      const bool sar = s_sar < s_slx;
      why = std::string("regression standard error s is lower for ") +
            (sar ? "SAR" : "SLX") + " (" + fixed4(s_sar) + " vs " +
            fixed4(s_slx) + ")";
      return sar ? ModelVariant::kSar : ModelVariant::kSlx;
    }
    const bool sar = e.sar_fit->spatial_p_value <= e.slx_fit->spatial_p_value;
    why = std::string("equal s; the spatial coefficient is more significant "
                      "in ") + (sar ? "SAR" : "SLX");
    return sar ? ModelVariant::kSar : ModelVariant::kSlx;
  }
  if (!f.sig_xy) {
    why = "I_xy is not significant, so the lag coefficient beta1 (proportional "
          "to I_xy) vanishes; keep the autoregressive term";
    return ModelVariant::kSar;
  }
  if (!f.sig_x) {
    why = "I_x is not significant, so the autoregressive coefficient beta2 "
          "(proportional to I_x) vanishes; keep the lag term";
    return ModelVariant::kSlx;
  }
  why = "both terms are supported; keep the autoregressive term by convention";
  return ModelVariant::kSar;
}

}  // namespace

std::string_view advisor_rule_name(AdvisorRule r) noexcept {
  switch (r) {
    case AdvisorRule::kGeneral: return "general";
    case AdvisorRule::kSpecialSar: return "special_sar";
    case AdvisorRule::kSpecialSlx: return "special_slx";
    case AdvisorRule::kFallbackComprehensive: return "fallback_comprehensive";
  }
  return "unknown";
}

AdvisorDecision select_model(const CorrelationEvidence& evidence) {
  if (!(evidence.alpha > 0.0 && evidence.alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }
  check_p(evidence.test_ix, "I_x");
  check_p(evidence.test_iy, "I_y");
  check_p(evidence.test_ixy, "I_xy");
  check_p(evidence.test_iyx, "I_yx");

  const Flags f = evaluate(evidence);
  AdvisorDecision d;
  d.collinearity_flag = f.collinear;
  std::string why;

  if (f.sig_x && f.sig_xy && !f.singular) {
    d.rule_fired = AdvisorRule::kGeneral;
    if (f.collinear) {
      d.recommended = better_of_sar_slx(evidence, f, why);
      d.rationale = "general-model conditions hold but nWx and nWy are "
                    "collinear, so one spatial term must be discarded: " + why;
    } else {
      d.recommended = ModelVariant::kGeneral;
      d.rationale = "I_x and I_xy are significant and Q != 0";
    }
  } else if (f.sig_x && f.sig_y && !f.sig_xy) {
    d.rule_fired = AdvisorRule::kSpecialSar;
    d.recommended = ModelVariant::kSar;
    d.rationale = "I_x and I_y are significant while I_xy is not";
  } else if (!f.sig_x && f.sig_xy) {
    d.rule_fired = AdvisorRule::kSpecialSlx;
    d.recommended = ModelVariant::kSlx;
    d.rationale = "I_x is not significant while I_xy is";
  } else {
    d.rule_fired = AdvisorRule::kFallbackComprehensive;
    d.recommended = better_of_sar_slx(evidence, f, why);
    d.rationale = "no correlation pattern matches exactly; " + why;
  }
  return d;
}

std::string narrative_report(const AdvisorDecision& decision,
                             const CorrelationEvidence& evidence) {
  std::string out;
  out += "Recommended model: " + std::string(variant_name(decision.recommended)) +
         "\n";
  out += "Rule fired: " + std::string(advisor_rule_name(decision.rule_fired)) +
         "\n";
  out += "Significance level alpha = " + fixed4(evidence.alpha) + "\n";
  auto line = [&](const char* name, const CorrelationTest& t) {
    out += std::string("  ") + name + " = " + fixed4(t.statistic) +
           ", p = " + fixed4(t.p_value) +
           (t.p_value <= evidence.alpha ? " (significant)" : " (not significant)") +
           "\n";
  };
  line("I_x ", evidence.test_ix);
  line("I_xy", evidence.test_ixy);
  line("I_yx", evidence.test_iyx);
  line("I_y ", evidence.test_iy);
  out += "Q = I_x I_y - I_xy^2 = " + fixed4(evidence.q) +
         "; corr(nWx, nWy) = " + fixed4(evidence.corr_lag_auto) + "\n";
  if (decision.collinearity_flag) {
    out += "WARNING: collinearity between the lag term nWx and the "
           "autoregressive term nWy (threshold " +
           fixed4(evidence.collinearity_threshold) +
           "); they should not enter the model together.\n";
  }
  out += "Rationale: " + decision.rationale + "\n";
  return out;
}

}  // namespace spatialcorr
