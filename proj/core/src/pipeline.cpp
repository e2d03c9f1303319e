#include "spatialcorr/pipeline.hpp"

#include <cmath>

#include "spatialcorr/error.hpp"

namespace spatialcorr {

namespace {

double pearson_raw(const Vector& a, const Vector& b) {
  const Vector da = a.array() - mean(a);
  const Vector db = b.array() - mean(b);
  const double denom = std::sqrt(da.squaredNorm() * db.squaredNorm());
  if (!(denom > 0.0)) return std::nan("");
  return da.dot(db) / denom;
}

std::vector<ModelVariant> variants_for(const AnalysisConfig& config) {
  if (config.model) {
    if (*config.model == ModelVariant::kOlsSimple) return {ModelVariant::kOlsSimple};
    return {ModelVariant::kOlsSimple, *config.model};
  }
  return {ModelVariant::kOlsSimple, ModelVariant::kGeneral, ModelVariant::kSar,
          ModelVariant::kSlx};
}

FitSummary fit_variant(ModelVariant variant, const StandardizedVector& x,
                       const StandardizedVector& y,
                       const SpatialWeightMatrix& w) {
  FitSummary summary;
  summary.variant = variant;
  try {
    const DesignMatrix design =
        build_design_matrix(ModelSpec::defaults(variant), x, y, w);
    summary.fit = ols_fit(design, y.values());
    summary.residual_response_moment = residual_response_moment(*summary.fit);
    try {
      summary.residual_moran = residual_moran(summary.fit->residuals, w);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroVariance) throw;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kRankDeficient &&
        e.code() != ErrorCode::kDegenerateVariance &&
        e.code() != ErrorCode::kInsufficientData) {
      throw;
    }
    summary.fit.reset();
    summary.error = e.what();
  }
  return summary;
}

std::vector<TheoreticalCoefficients> theoretical_table(
    const CorrelationTable& table, const std::vector<ModelVariant>& variants,
    const std::optional<DecompositionResult>& canonical) {
  std::vector<TheoreticalCoefficients> out;
  for (ModelVariant v : variants) {
    TheoreticalCoefficients t;
    t.variant = v;
    switch (v) {
      case ModelVariant::kOlsSimple:
        t.a = 0.0;
        t.b = table.r;
        break;
      case ModelVariant::kGeneral:
      case ModelVariant::kSar:
      case ModelVariant::kSlx:
        t.b = table.r;
        if (!canonical) {
          t.note = "Q is singular; spatial coefficients undefined";
          break;
        }
        if (v != ModelVariant::kSar) t.beta1 = canonical->beta1;
        if (v != ModelVariant::kSlx) t.beta2 = canonical->beta2;
        t.a = constant_term(t.beta1.value_or(0.0), t.beta2.value_or(0.0),
                            table.mean_nwx, table.mean_nwy);
        break;
      case ModelVariant::kPureSar:
        try {
          t.beta2 = pure_sar_coefficient(table.c);
        } catch (const Error& e) {
          t.note = e.what();
        }
        break;
      case ModelVariant::kPureSlx:
        try {
          t.beta1 = pure_slx_coefficient(table.r, table.c);
        } catch (const Error& e) {
          t.note = e.what();
        }
        break;
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

void validate(const AnalysisConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }
  if (config.permutations != 0 && config.permutations < kMinPermutations) {
    throw Error(ErrorCode::kInvalidArgument,
                "permutations must be 0 (disabled) or at least " +
                    std::to_string(kMinPermutations));
  }
  if (!(config.collinearity_threshold > 0.0 &&
        config.collinearity_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "collinearity threshold must lie in (0, 1]");
  }
}

const CorrelationRow& CorrelationTable::row(std::string_view name) const {
  for (const auto& r : rows) {
    if (r.name == name) return r;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "no correlation row '" + std::string(name) + "'");
}

const FitSummary* AnalysisReport::find_fit(ModelVariant v) const noexcept {
  for (const auto& f : fits) {
    if (f.variant == v) return &f;
  }
  return nullptr;
}

AnalysisReport run_analysis(const RawAttributeTable& attrs,
                            const DistanceMatrix& distances,
                            const AnalysisConfig& config) {
  validate(config);
  if (distances.size() != attrs.size()) {
    throw Error(ErrorCode::kSchemaError,
                "attribute table has " + std::to_string(attrs.size()) +
                    " units but the distance matrix has " +
                    std::to_string(distances.size()));
  }
  if (!distances.ids().empty() && distances.ids() != attrs.ids()) {
    throw Error(ErrorCode::kSchemaError,
                "distance ids are not aligned with the attribute table");
  }

  AnalysisReport report;
  report.ids = attrs.ids();
  report.n = attrs.size();
  report.log_transform = config.log_transform;
  report.alpha = config.alpha;
  report.seed = config.seed;
  report.permutations = config.permutations;
  report.model = config.model;

  // Step 1: standardized variables, weights and correlation indexes.
  const Vector x_raw =
      config.log_transform ? log_transform(attrs.x_raw()) : attrs.x_raw();
  const Vector y_raw =
      config.log_transform ? log_transform(attrs.y_raw()) : attrs.y_raw();
  const StandardizedVector x = zscore(x_raw);
  const StandardizedVector y = zscore(y_raw);
  const SpatialWeightMatrix w =
      normalize_global(inverse_distance_contiguity(distances));
  report.weights = w.values();

  CorrelationTable& table = report.correlation;
  table.c = spatial_correlation_matrix(x, y, w);
  table.r = pearson_r(x, y);
  const Vector nwx = scaled_spatial_lag(w.values(), x.values());
  const Vector nwy = scaled_spatial_lag(w.values(), y.values());
  table.mean_nwx = mean(nwx);
  table.mean_nwy = mean(nwy);
  table.corr_lag_auto = pearson_raw(nwx, nwy);
  table.collinearity = collinearity_q(table.c, table.corr_lag_auto,
                                      config.collinearity_threshold);

  struct Pair {
    const char* name;
    const StandardizedVector* z1;
    const StandardizedVector* z2;
  };
  const Pair pairs[] = {{"I_x", &x, &x}, {"I_xy", &x, &y},
                        {"I_yx", &y, &x}, {"I_y", &y, &y}};
  for (std::size_t i = 0; i < std::size(pairs); ++i) {
    const Pair& p = pairs[i];
    CorrelationRow row;
    row.name = p.name;
    row.regression = significance_by_regression(*p.z1, *p.z2, w);
    if (config.permutations > 0) {
      // Each row gets its own stream so rows do not share permutations.
      row.permutation = significance_by_permutation(
          *p.z1, *p.z2, w, config.permutations, config.seed + i,
          config.threads);
    }
    table.rows.push_back(std::move(row));
  }

  // Step 2: estimation, empirical and theoretical.
  const auto variants = variants_for(config);
  for (ModelVariant v : variants) report.fits.push_back(fit_variant(v, x, y, w));

  try {
    DecompositionResult canonical = decompose_canonical(table.r, table.c);
    report.decomposition.a = constant_term(canonical.beta1, canonical.beta2,
                                           table.mean_nwx, table.mean_nwy);
    report.decomposition.identity_checks =
        identity_check(canonical.input, canonical.beta1, canonical.beta2);
    report.decomposition.result = canonical;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularSystem) throw;
    report.decomposition.error = e.what();
  }
  report.theoretical =
      theoretical_table(table, variants, report.decomposition.result);

  // Step 3: checks against the general OLS fit.
  if (const FitSummary* general = report.find_fit(ModelVariant::kGeneral)) {
    if (general->fit) {
      const RegressionFit& fit = *general->fit;
      const DecompositionInput input{table.r, fit.coefficient(Term::kX),
                                     residual_variance(fit), table.c};
      report.decomposition_empirical.identity_checks = identity_check(
          input, fit.coefficient(Term::kLag), fit.coefficient(Term::kAuto));
      try {
        DecompositionResult full = decompose_full(input);
        report.decomposition_empirical.a = constant_term(
            full.beta1, full.beta2, table.mean_nwx, table.mean_nwy);
        report.decomposition_empirical.result = full;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kSingularSystem) throw;
        report.decomposition_empirical.error = e.what();
      }
    } else {
      report.decomposition_empirical.error = general->error;
    }
  } else {
    report.decomposition_empirical.error = "general model not fitted";
  }

  // Advice.
  CorrelationEvidence& ev = report.evidence;
  ev.test_ix = table.row("I_x").regression;
  ev.test_ixy = table.row("I_xy").regression;
  ev.test_iyx = table.row("I_yx").regression;
  ev.test_iy = table.row("I_y").regression;
  ev.q = table.collinearity.q;
  ev.corr_lag_auto = table.corr_lag_auto;
  ev.alpha = config.alpha;
  ev.collinearity_threshold = config.collinearity_threshold;
  auto summary = [&](ModelVariant v, Term spatial) -> std::optional<ModelFitSummary> {
    const FitSummary* f = report.find_fit(v);
    if (!f || !f->fit) return std::nullopt;
    const Coefficient* c = f->fit->find(spatial);
    return ModelFitSummary{f->fit->reg_std_error, c ? c->p_value : 1.0};
  };
  ev.sar_fit = summary(ModelVariant::kSar, Term::kAuto);
  ev.slx_fit = summary(ModelVariant::kSlx, Term::kLag);
  report.advice = select_model(ev);
  return report;
}

AnalysisReport run_pipeline(const AnalysisConfig& config) {
  validate(config);
  const RawAttributeTable attrs = parse_attributes(config.attrs_path);
  const DistanceMatrix distances =
      parse_distances(config.dist_path, config.dist_format, attrs.ids());
  return run_analysis(attrs, distances, config);
}

}  // namespace spatialcorr
