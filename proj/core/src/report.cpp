#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "spatialcorr/pipeline.hpp"

namespace spatialcorr {

namespace {

using Json = nlohmann::ordered_json;

// Rounds to 15 significant digits and stores the rounded double, so the
// emitted text is short and re-parses to the identical value.
Json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return std::strtod(buf, nullptr);
}

Json num(const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); }

Json pair(double left, double right) { return Json::array({num(left), num(right)}); }

Json correlation_json(const CorrelationTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"name", r.name},
                    {"index", num(r.regression.statistic)},
                    {"p_value", num(r.regression.p_value)},
                    {"t_value", num(r.regression.t_value)},
                    {"slope_se", num(r.regression.slope_se)},
                    {"method", test_method_name(r.regression.method)},
                    {"permutation_p_value",
                     r.permutation ? num(r.permutation->p_value) : Json(nullptr)}});
  }
  return {{"C", Json::array({Json::array({num(t.c.i_x), num(t.c.i_xy)}),
                             Json::array({num(t.c.i_yx), num(t.c.i_y)})})},
          {"R", num(t.r)},
          {"rows", rows},
          {"mean_nwx", num(t.mean_nwx)},
          {"mean_nwy", num(t.mean_nwy)},
          {"corr_lag_auto", num(t.corr_lag_auto)},
          {"collinearity",
           {{"q", num(t.collinearity.q)},
            {"exact_singular", t.collinearity.exact_singular},
            {"practical_warning", t.collinearity.practical_warning}}}};
}

Json fit_json(const FitSummary& f) {
  Json j = {{"variant", variant_name(f.variant)}};
  if (!f.fit) {
    j["error"] = f.error;
    return j;
  }
  const RegressionFit& fit = *f.fit;
  Json coefs = Json::array();
  for (const auto& c : fit.coefficients) {
    coefs.push_back({{"parameter", term_name(c.term)},
                     {"value", num(c.value)},
                     {"std_error", num(c.standard_error)},
                     {"t_value", num(c.t_value)},
                     {"p_value", num(c.p_value)}});
  }
  j["coefficients"] = coefs;
  j["r2"] = num(fit.r_squared);
  j["s"] = num(fit.reg_std_error);
  j["f"] = num(fit.f_statistic);
  j["dw"] = num(fit.durbin_watson);
  j["dw_ordering"] = "heuristic: input row order";
  j["sigma_u_sq"] = num(fit.sigma_u_sq);
  j["residual_response_moment"] = num(f.residual_response_moment);
  j["residual_moran"] = num(f.residual_moran);
  return j;
}

Json theoretical_json(const TheoreticalCoefficients& t) {
  Json j = {{"variant", variant_name(t.variant)},
            {"a", num(t.a)},
            {"b", num(t.b)},
            {"beta1", num(t.beta1)},
            {"beta2", num(t.beta2)}};
  if (!t.note.empty()) j["note"] = t.note;
  return j;
}

Json checks_json(const IdentityCheckReport& r) {
  return {{"eq21", pair(r.eq21_left, r.eq21_right)},
          {"eq22", pair(r.eq22_left, r.eq22_right)},
          {"eq24", pair(r.eq24_left, r.eq24_right)},
          {"max_abs_gap", num(r.max_abs_gap)}};
}

Json decomposition_json(const DecompositionBlock& b) {
  Json j;
  if (b.result) {
    j["mode"] = decomposition_mode_name(b.result->mode);
    j["beta1"] = num(b.result->beta1);
    j["beta2"] = num(b.result->beta2);
    j["a"] = num(b.a);
    j["O"] = num(b.result->det.o);
    j["P"] = num(b.result->det.p);
    j["Q"] = num(b.result->det.q);
  } else {
    j["mode"] = nullptr;
    j["beta1"] = nullptr;
    j["beta2"] = nullptr;
    j["a"] = nullptr;
  }
  j["identity_checks"] = b.identity_checks ? checks_json(*b.identity_checks)
                                           : Json(nullptr);
  if (!b.error.empty()) j["error"] = b.error;
  return j;
}

std::string fixed(double v, int digits = 4) {
  if (!std::isfinite(v)) return "undefined";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  // Avoid printing "-0.0000".
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

std::string fixed(const std::optional<double>& v) {
  return v ? fixed(*v) : std::string("-");
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string render_json(const AnalysisReport& report, unsigned sections) {
  Json root;
  root["meta"] = {{"n", report.n},
                  {"log_transform", report.log_transform},
                  {"alpha", num(report.alpha)},
                  {"seed", report.seed},
                  {"permutations", report.permutations},
                  {"model", report.model ? Json(variant_name(*report.model))
                                         : Json(nullptr)}};
  if (sections & kSectionCorrelation) {
    root["correlation"] = correlation_json(report.correlation);
  }
  if (sections & kSectionFits) {
    Json fits = Json::array();
    for (const auto& f : report.fits) fits.push_back(fit_json(f));
    root["fits"] = fits;
    Json theory = Json::array();
    for (const auto& t : report.theoretical) theory.push_back(theoretical_json(t));
    root["theoretical"] = theory;
  }
  if (sections & kSectionDecomposition) {
    root["decomposition"] = decomposition_json(report.decomposition);
    root["decomposition_empirical"] =
        decomposition_json(report.decomposition_empirical);
  }
  if (sections & kSectionChecks) {
    Json checks;
    if (const auto& c = report.decomposition.identity_checks) {
      checks["theoretical"] = {{"eq21", pair(c->eq21_left, c->eq21_right)},
                               {"eq24", pair(c->eq24_left, c->eq24_right)}};
    } else {
      checks["theoretical"] = nullptr;
    }
    if (const auto& c = report.decomposition_empirical.identity_checks) {
      checks["empirical"] = {{"eq21", pair(c->eq21_left, c->eq21_right)},
                             {"eq22", pair(c->eq22_left, c->eq22_right)}};
    } else {
      checks["empirical"] = nullptr;
    }
    root["identity_checks"] = checks;
  }
  if (sections & kSectionAdvice) {
    root["advice"] = {
        {"recommended", variant_name(report.advice.recommended)},
        {"rule_fired", advisor_rule_name(report.advice.rule_fired)},
        {"collinearity_flag", report.advice.collinearity_flag},
        {"alpha", num(report.alpha)},
        {"rationale", report.advice.rationale}};
  }
  return root.dump(2) + "\n";
}

std::string render_text(const AnalysisReport& report, unsigned sections) {
  std::ostringstream out;
  out << "n = " << report.n << (report.log_transform ? " (log-transformed)" : "")
      << ", alpha = " << fixed(report.alpha, 2) << "\n\n";

  if (sections & kSectionCorrelation) {
    const auto& t = report.correlation;
    out << "Spatial correlation indexes\n";
    out << pad("Parameter", 12) << pad("Index", 10) << pad("P-value", 10)
        << "Perm. P\n";
    for (const auto& r : t.rows) {
      out << pad(r.name, 12) << pad(fixed(r.regression.statistic), 10)
          << pad(fixed(r.regression.p_value), 10)
          << (r.permutation ? fixed(r.permutation->p_value) : std::string("-"))
          << "\n";
    }
    out << pad("R", 12) << fixed(t.r) << "\n";
    for (const auto& f : report.fits) {
      if (f.fit) {
        out << pad("sigma^2", 12) << pad(fixed(f.fit->sigma_u_sq), 10) << "("
            << variant_name(f.variant) << ")\n";
      }
    }
    out << "C = [[" << fixed(t.c.i_x) << ", " << fixed(t.c.i_xy) << "], ["
        << fixed(t.c.i_yx) << ", " << fixed(t.c.i_y) << "]]\n";
    out << "mean(nWx) = " << fixed(t.mean_nwx) << ", mean(nWy) = "
        << fixed(t.mean_nwy) << ", corr(nWx, nWy) = " << fixed(t.corr_lag_auto)
        << ", Q = " << fixed(t.collinearity.q, 6) << "\n\n";
  }

  if (sections & kSectionFits) {
    out << "Parameter estimates\n";
    out << pad("Model", 12) << pad("Param", 7) << pad("Theory", 10)
        << pad("Empirical", 11) << "P-value\n";
    for (const auto& f : report.fits) {
      const TheoreticalCoefficients* theory = nullptr;
      for (const auto& t : report.theoretical) {
        if (t.variant == f.variant) theory = &t;
      }
      if (!f.fit) {
        out << pad(std::string(variant_name(f.variant)), 12) << "fit failed: "
            << f.error << "\n";
        continue;
      }
      for (const auto& c : f.fit->coefficients) {
        std::optional<double> tv;
        if (theory) {
          switch (c.term) {
            case Term::kIntercept: tv = theory->a; break;
            case Term::kX: tv = theory->b; break;
            case Term::kLag: tv = theory->beta1; break;
            case Term::kAuto: tv = theory->beta2; break;
          }
        }
        out << pad(std::string(variant_name(f.variant)), 12)
            << pad(std::string(term_name(c.term)), 7) << pad(fixed(tv), 10)
            << pad(fixed(c.value), 11) << fixed(c.p_value) << "\n";
      }
    }
    out << "\nFit statistics (DW uses input row order)\n";
    out << pad("Model", 12) << pad("R^2", 9) << pad("s", 9) << pad("F", 11)
        << pad("DW", 9) << "I_e\n";
    for (const auto& f : report.fits) {
      if (!f.fit) continue;
      out << pad(std::string(variant_name(f.variant)), 12)
          << pad(fixed(f.fit->r_squared), 9) << pad(fixed(f.fit->reg_std_error), 9)
          << pad(fixed(f.fit->f_statistic), 11)
          << pad(fixed(f.fit->durbin_watson), 9) << fixed(f.residual_moran) << "\n";
    }
    out << "\n";
  }

  if (sections & kSectionDecomposition) {
    auto block = [&](const char* title, const DecompositionBlock& b) {
      out << title << "\n";
      if (!b.result) {
        out << "  undefined: " << b.error << "\n";
        return;
      }
      out << "  mode " << decomposition_mode_name(b.result->mode)
          << ": beta1 = " << fixed(b.result->beta1)
          << ", beta2 = " << fixed(b.result->beta2) << ", a = " << fixed(b.a)
          << "\n  O = " << fixed(b.result->det.o, 6)
          << ", P = " << fixed(b.result->det.p, 6)
          << ", Q = " << fixed(b.result->det.q, 6) << "\n";
    };
    block("Theoretical decomposition (b = R, sigma_u^2 = 0)", report.decomposition);
    block("Empirical decomposition (general OLS fit)",
          report.decomposition_empirical);
    out << "\n";
  }

  if (sections & kSectionChecks) {
    out << "Identity checks\n";
    out << pad("Type", 13) << pad("Equation", 10) << pad("Left", 10) << "Right\n";
    if (const auto& c = report.decomposition.identity_checks) {
      out << pad("Theoretical", 13) << pad("(21)", 10) << pad(fixed(c->eq21_left), 10)
          << fixed(c->eq21_right) << "\n";
      out << pad("Theoretical", 13) << pad("(24)", 10) << pad(fixed(c->eq24_left), 10)
          << fixed(c->eq24_right) << "\n";
    }
    if (const auto& c = report.decomposition_empirical.identity_checks) {
      out << pad("Empirical", 13) << pad("(21)", 10) << pad(fixed(c->eq21_left), 10)
          << fixed(c->eq21_right) << "\n";
      out << pad("Empirical", 13) << pad("(22)", 10) << pad(fixed(c->eq22_left), 10)
          << fixed(c->eq22_right) << "\n";
    }
    out << "\n";
  }

  if (sections & kSectionAdvice) {
    out << narrative_report(report.advice, report.evidence);
  }
  return out.str();
}

std::string render(const AnalysisReport& report, OutputFormat format,
                   unsigned sections) {
  return format == OutputFormat::kJson ? render_json(report, sections)
                                       : render_text(report, sections);
}

}  // namespace spatialcorr
