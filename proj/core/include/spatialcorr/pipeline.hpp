#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spatialcorr/advisor.hpp"
#include "spatialcorr/correlation.hpp"
#include "spatialcorr/data.hpp"
#include "spatialcorr/decomposition.hpp"
#include "spatialcorr/io.hpp"
#include "spatialcorr/regression.hpp"
#include "spatialcorr/weights.hpp"

namespace spatialcorr {

enum class OutputFormat { kJson, kText };

struct AnalysisConfig {
  std::filesystem::path attrs_path;
  std::filesystem::path dist_path;
  DistanceFormat dist_format = DistanceFormat::kSquare;
  bool log_transform = false;
  double alpha = 0.05;
  /// When set, only ols_simple and this variant are fitted.
  std::optional<ModelVariant> model;
  std::uint64_t seed = 0;
  /// 0 disables permutation testing.
  int permutations = 999;
  /// Worker threads for permutation tests (0 = hardware concurrency). Does
  /// not affect results.
  unsigned threads = 1;
  double collinearity_threshold = kDefaultCollinearityThreshold;
  OutputFormat output = OutputFormat::kJson;
};

/// Throws InvalidArgument if alpha, permutations or the threshold are out of
/// range.
void validate(const AnalysisConfig& config);

/// One index row of the correlation table.
struct CorrelationRow {
  std::string name;  // I_x, I_xy, I_yx, I_y
  CorrelationTest regression;
  std::optional<CorrelationTest> permutation;
};

struct CorrelationTable {
  SpatialCorrelationMatrix c;
  std::vector<CorrelationRow> rows;  // I_x, I_xy, I_yx, I_y
  double r = 0.0;
  double mean_nwx = 0.0;
  double mean_nwy = 0.0;
  double corr_lag_auto = 0.0;
  CollinearityCheck collinearity;

  const CorrelationRow& row(std::string_view name) const;
};

/// Closed-form coefficients of one variant (nullopt where undefined).
struct TheoreticalCoefficients {
  ModelVariant variant;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> beta1;
  std::optional<double> beta2;
  std::string note;
};

struct FitSummary {
  ModelVariant variant;
  std::optional<RegressionFit> fit;
  std::string error;  // set when the fit failed (e.g. RankDeficient)
  std::optional<double> residual_moran;
  double residual_response_moment = 0.0;
};

struct DecompositionBlock {
  std::optional<DecompositionResult> result;
  std::optional<double> a;
  std::optional<IdentityCheckReport> identity_checks;
  std::string error;
};

struct AnalysisReport {
  std::vector<std::string> ids;
  Eigen::Index n = 0;
  bool log_transform = false;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  int permutations = 0;
  std::optional<ModelVariant> model;

  Matrix weights;
  CorrelationTable correlation;
  std::vector<FitSummary> fits;
  std::vector<TheoreticalCoefficients> theoretical;
  DecompositionBlock decomposition;            // canonical: b = R, sigma_u^2 = 0
  DecompositionBlock decomposition_empirical;  // Cramer solve of the general OLS fit
  CorrelationEvidence evidence;
  AdvisorDecision advice;

  const FitSummary* find_fit(ModelVariant v) const noexcept;
};

/// Standardize, build weights, test correlations, fit models, decompose,
/// check identities and advise. Deterministic given the inputs and config.
AnalysisReport run_analysis(const RawAttributeTable& attrs,
                            const DistanceMatrix& distances,
                            const AnalysisConfig& config);

/// Reads the files named in `config` and calls run_analysis.
AnalysisReport run_pipeline(const AnalysisConfig& config);

enum Section : unsigned {
  kSectionCorrelation = 1u << 0,
  kSectionFits = 1u << 1,
  kSectionDecomposition = 1u << 2,
  kSectionChecks = 1u << 3,
  kSectionAdvice = 1u << 4,
  kSectionAll = 0x1Fu,
};

/// Canonical JSON, numbers rounded to 15 significant digits, non-finite or
/// undefined values as null.
std::string render_json(const AnalysisReport& report,
                        unsigned sections = kSectionAll);

/// Human-readable tables rounded to 4 decimals.
std::string render_text(const AnalysisReport& report,
                        unsigned sections = kSectionAll);

std::string render(const AnalysisReport& report, OutputFormat format,
                   unsigned sections = kSectionAll);

}  // namespace spatialcorr
