#include "spatialcorr/regression.hpp"

#include <cmath>
#include <limits>

#include "spatialcorr/error.hpp"
#include "spatialcorr/stats.hpp"

namespace spatialcorr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Term> variant_terms(const ModelSpec& spec) {
  std::vector<Term> terms;
  if (spec.include_intercept) terms.push_back(Term::kIntercept);
  switch (spec.variant) {
    case ModelVariant::kOlsSimple:
      terms.push_back(Term::kX);
      break;
    case ModelVariant::kGeneral:
      terms.insert(terms.end(), {Term::kX, Term::kLag, Term::kAuto});
      break;
    case ModelVariant::kSar:
      terms.insert(terms.end(), {Term::kX, Term::kAuto});
      break;
    case ModelVariant::kSlx:
      terms.insert(terms.end(), {Term::kX, Term::kLag});
      break;
    case ModelVariant::kPureSar:
      terms.push_back(Term::kAuto);
      break;
    case ModelVariant::kPureSlx:
      terms.push_back(Term::kLag);
      break;
  }
  return terms;
}

}  // namespace

std::string_view variant_name(ModelVariant v) noexcept {
  switch (v) {
    case ModelVariant::kOlsSimple: return "ols_simple";
    case ModelVariant::kGeneral: return "general";
    case ModelVariant::kSar: return "sar";
    case ModelVariant::kSlx: return "slx";
    case ModelVariant::kPureSar: return "pure_sar";
    case ModelVariant::kPureSlx: return "pure_slx";
  }
  return "unknown";
}

std::optional<ModelVariant> parse_variant(std::string_view name) noexcept {
  for (auto v : {ModelVariant::kOlsSimple, ModelVariant::kGeneral,
                 ModelVariant::kSar, ModelVariant::kSlx, ModelVariant::kPureSar,
                 ModelVariant::kPureSlx}) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

ModelSpec ModelSpec::defaults(ModelVariant variant) {
  const bool pure =
      variant == ModelVariant::kPureSar || variant == ModelVariant::kPureSlx;
  return ModelSpec{variant, !pure};
}

std::string_view term_name(Term t) noexcept {
  switch (t) {
    case Term::kIntercept: return "a";
    case Term::kX: return "b";
    case Term::kLag: return "beta1";
    case Term::kAuto: return "beta2";
  }
  return "?";
}

bool DesignMatrix::has_intercept() const noexcept {
  for (Term t : terms) {
    if (t == Term::kIntercept) return true;
  }
  return false;
}

Vector scaled_spatial_lag(const Matrix& w, const Vector& z) {
  if (w.rows() != z.size() || w.cols() != z.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "weight matrix is " + std::to_string(w.rows()) + "x" +
                    std::to_string(w.cols()) + " but vector has " +
                    std::to_string(z.size()) + " entries");
  }
  return static_cast<double>(z.size()) * (w * z);
}

DesignMatrix build_design_matrix(const ModelSpec& spec,
                                 const StandardizedVector& x,
                                 const StandardizedVector& y,
                                 const SpatialWeightMatrix& w) {
  const Eigen::Index n = x.size();
  if (y.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "x and y differ in length");
  }
  DesignMatrix design;
  design.terms = variant_terms(spec);
  design.columns.resize(n, static_cast<Eigen::Index>(design.terms.size()));
  for (Eigen::Index c = 0; c < design.cols(); ++c) {
    switch (design.terms[c]) {
      case Term::kIntercept:
        design.columns.col(c).setOnes();
        break;
      case Term::kX:
        design.columns.col(c) = x.values();
        break;
      case Term::kLag:
        design.columns.col(c) = scaled_spatial_lag(w.values(), x.values());
        break;
      case Term::kAuto:
        design.columns.col(c) = scaled_spatial_lag(w.values(), y.values());
        break;
    }
  }
  return design;
}

const Coefficient* RegressionFit::find(Term t) const noexcept {
  for (const auto& c : coefficients) {
    if (c.term == t) return &c;
  }
  return nullptr;
}

double RegressionFit::coefficient(Term t) const noexcept {
  const Coefficient* c = find(t);
  return c ? c->value : 0.0;
}

RegressionFit least_squares(const DesignMatrix& design, const Vector& response) {
  const Eigen::Index n = design.rows();
  const Eigen::Index k = design.cols();
  if (response.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "response length does not match design rows");
  }
  if (static_cast<Eigen::Index>(design.terms.size()) != k) {
    throw Error(ErrorCode::kDimensionMismatch,
                "design term labels do not match its columns");
  }
  if (k == 0 || n <= k) {
    throw Error(ErrorCode::kInsufficientData,
                "least squares needs more observations (" + std::to_string(n) +
                    ") than regressors (" + std::to_string(k) + ")");
  }

  Eigen::JacobiSVD<Matrix> svd(design.columns,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(k - 1);
  if (!(smax > 0.0) || smin / smax < kRankTolerance) {
    throw Error(ErrorCode::kRankDeficient,
                "design matrix is rank deficient (singular value ratio " +
                    std::to_string(smax > 0.0 ? smin / smax : 0.0) +
                    "); regressors are collinear");
  }

  const Vector inv_sv = sv.cwiseInverse();
  const Vector beta =
      svd.matrixV() * (inv_sv.asDiagonal() * (svd.matrixU().transpose() * response));

  RegressionFit fit;
  fit.n = n;
  fit.k = k;
  fit.has_intercept = design.has_intercept();
  fit.response = response;
  fit.residuals = response - design.columns * beta;
  fit.unscaled_covariance = svd.matrixV() *
                            inv_sv.cwiseAbs2().asDiagonal() *
                            svd.matrixV().transpose();
  fit.coefficients.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    Coefficient c;
    c.term = design.terms[static_cast<std::size_t>(j)];
    c.value = beta[j];
    c.standard_error = kNaN;
    c.t_value = kNaN;
    c.p_value = kNaN;
    fit.coefficients.push_back(c);
  }
  fit.sigma_u_sq = fit.residuals.squaredNorm() / static_cast<double>(n);
  fit.r_squared = kNaN;
  fit.reg_std_error = kNaN;
  fit.f_statistic = kNaN;
  fit.durbin_watson = kNaN;
  return fit;
}

RegressionFit diagnostics(RegressionFit fit) {
  const Eigen::Index n = fit.n;
  const Eigen::Index k = fit.k;
  const double dn = static_cast<double>(n);
  const double df = static_cast<double>(n - k);

  const double sst = (fit.response.array() - mean(fit.response)).square().sum();
  if (!(sst > 0.0)) {
    throw Error(ErrorCode::kDegenerateVariance,
                "response is constant; R^2 is undefined");
  }
  const double ssr = fit.residuals.squaredNorm();

  fit.sigma_u_sq = ssr / dn;
  fit.r_squared = 1.0 - ssr / sst;
  fit.reg_std_error = std::sqrt(ssr / df);
  if (fit.has_intercept && k > 1) {
    fit.f_statistic = (fit.r_squared / static_cast<double>(k - 1)) /
                      ((1.0 - fit.r_squared) / df);
  } else {
    fit.f_statistic = kNaN;
  }
  if (ssr > 0.0) {
    double num = 0.0;
    for (Eigen::Index t = 1; t < n; ++t) {
      const double d = fit.residuals[t] - fit.residuals[t - 1];
      num += d * d;
    }
    fit.durbin_watson = num / ssr;
  } else {
    fit.durbin_watson = kNaN;
  }

  const double s2 = ssr / df;
  for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
    auto& c = fit.coefficients[j];
    const auto jj = static_cast<Eigen::Index>(j);
    c.standard_error = std::sqrt(s2 * fit.unscaled_covariance(jj, jj));
    if (c.standard_error > 0.0) {
      c.t_value = c.value / c.standard_error;
      c.p_value = student_t_two_sided_p(c.t_value, df);
    } else if (c.value == 0.0) {
      c.t_value = 0.0;
      c.p_value = 1.0;
    } else {
      c.t_value = std::copysign(std::numeric_limits<double>::infinity(), c.value);
      c.p_value = 0.0;
    }
  }
  return fit;
}

RegressionFit ols_fit(const DesignMatrix& design, const Vector& response) {
  return diagnostics(least_squares(design, response));
}

double residual_variance(const RegressionFit& fit) {
  return fit.residuals.squaredNorm() / static_cast<double>(fit.residuals.size());
}

double residual_response_moment(const RegressionFit& fit) {
  return fit.response.dot(fit.residuals) /
         static_cast<double>(fit.residuals.size());
}

}  // namespace spatialcorr
