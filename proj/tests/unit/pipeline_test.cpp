#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "json.hpp"
#include "oracles.hpp"
#include "spatialcorr/error.hpp"
#include "spatialcorr/pipeline.hpp"
#include "test_util.hpp"

namespace spatialcorr {
namespace {

using testing::code_of;

const std::string kFixtures = SPATIALCORR_FIXTURE_DIR;

AnalysisConfig cities4(int permutations = 199) {
  AnalysisConfig c;
  c.attrs_path = kFixtures + "/cities4_attrs.csv";
  c.dist_path = kFixtures + "/cities4_dist.csv";
  c.permutations = permutations;
  c.seed = 7;
  return c;
}

TEST(Pipeline, CitiesFixtureMatchesBruteForce) {
  const auto report = run_pipeline(cities4());
  const oracle::Mat points{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
  const auto w = oracle::inverse_distance_weights(points);
  const auto x = oracle::standardize({1, 2, 3, 4});
  const auto y = oracle::standardize({2, 1, 4, 3});
  const auto& c = report.correlation.c;
  EXPECT_NEAR(c.i_x, oracle::double_sum(w, x, x), 1e-14);
  EXPECT_NEAR(c.i_xy, oracle::double_sum(w, x, y), 1e-14);
  EXPECT_NEAR(c.i_yx, oracle::double_sum(w, y, x), 1e-14);
  EXPECT_NEAR(c.i_y, oracle::double_sum(w, y, y), 1e-14);
  EXPECT_NEAR(report.correlation.r, 0.6, 1e-14);
  EXPECT_EQ(report.ids, (std::vector<std::string>{"A", "B", "C", "D"}));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_NEAR(report.weights(i, j), w[i][j], 1e-15);

  // n = k for the general model: recorded as a failed fit, not an abort.
  const auto* general = report.find_fit(ModelVariant::kGeneral);
  ASSERT_NE(general, nullptr);
  EXPECT_FALSE(general->fit.has_value());
  EXPECT_FALSE(general->error.empty());
  ASSERT_TRUE(report.decomposition.result.has_value());
}

TEST(Pipeline, LongFormGivesSameReport) {
  auto a = cities4();
  auto b = cities4();
  b.dist_path = kFixtures + "/cities4_dist_long.csv";
  b.dist_format = DistanceFormat::kLong;
  EXPECT_EQ(render_json(run_pipeline(a)), render_json(run_pipeline(b)));
}

TEST(Pipeline, ModelFilter) {
  auto cfg = cities4();
  cfg.model = ModelVariant::kSar;
  const auto report = run_pipeline(cfg);
  ASSERT_EQ(report.fits.size(), 2u);
  EXPECT_EQ(report.fits[0].variant, ModelVariant::kOlsSimple);
  EXPECT_EQ(report.fits[1].variant, ModelVariant::kSar);
}

TEST(Pipeline, DefaultFitsCoverTheComparedModels) {
  const auto report = run_pipeline(cities4());
  for (auto v : {ModelVariant::kOlsSimple, ModelVariant::kGeneral, ModelVariant::kSar,
                 ModelVariant::kSlx}) {
    EXPECT_NE(report.find_fit(v), nullptr);
  }
}

TEST(Pipeline, DeterministicAcrossRunsAndThreads) {
  auto serial = cities4(999);
  auto parallel = cities4(999);
  parallel.threads = 4;
  const auto first = render_json(run_pipeline(serial));
  EXPECT_EQ(first, render_json(run_pipeline(serial)));
  EXPECT_EQ(first, render_json(run_pipeline(parallel)));
  EXPECT_EQ(render_text(run_pipeline(serial)), render_text(run_pipeline(parallel)));
}

TEST(Pipeline, SeedChangesOnlyPermutationResults) {
  auto a = cities4(999);
  auto b = cities4(999);
  b.seed = 8;
  const auto ra = run_pipeline(a);
  const auto rb = run_pipeline(b);
  EXPECT_EQ(ra.correlation.c.i_x, rb.correlation.c.i_x);
  EXPECT_EQ(ra.correlation.row("I_x").regression.p_value,
            rb.correlation.row("I_x").regression.p_value);
}

TEST(Pipeline, JsonShapeAndRoundTrip) {
  const auto text = render_json(run_pipeline(cities4()));
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"meta", "correlation", "fits", "theoretical", "decomposition",
                          "decomposition_empirical", "identity_checks", "advice"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["correlation"]["rows"].size(), 4u);
  EXPECT_TRUE(j["decomposition"]["identity_checks"].contains("eq21"));
  EXPECT_TRUE(j["advice"].contains("rule_fired"));

  // Re-serializing parsed numbers reproduces the document.
  EXPECT_EQ(j.dump(2), nlohmann::json::parse(j.dump(2)).dump(2));
  std::function<void(const nlohmann::json&)> check = [&](const nlohmann::json& node) {
    if (node.is_number_float()) {
      const double v = node.get<double>();
      EXPECT_EQ(std::stod(format_number(v)), v);
    } else if (node.is_structured()) {
      for (const auto& child : node) check(child);
    }
  };
  check(j);
}

TEST(Pipeline, CollinearInputsReportSingularity) {
  auto cfg = cities4(0);
  cfg.attrs_path = kFixtures + "/collinear_attrs.csv";
  const auto report = run_pipeline(cfg);
  EXPECT_FALSE(report.decomposition.result.has_value());
  EXPECT_FALSE(report.decomposition.error.empty());
  EXPECT_TRUE(report.advice.collinearity_flag);
  EXPECT_NE(report.advice.recommended, ModelVariant::kGeneral);
}

TEST(Pipeline, SectionsFilterOutput) {
  const auto report = run_pipeline(cities4(0));
  const auto j = nlohmann::json::parse(render_json(report, kSectionAdvice));
  EXPECT_TRUE(j.contains("advice"));
  EXPECT_FALSE(j.contains("fits"));
  EXPECT_FALSE(j.contains("correlation"));
}

TEST(Pipeline, ConfigValidation) {
  auto cfg = cities4();
  cfg.alpha = 0.0;
  EXPECT_EQ(code_of([&] { validate(cfg); }), ErrorCode::kInvalidArgument);
  cfg = cities4(50);
  EXPECT_EQ(code_of([&] { validate(cfg); }), ErrorCode::kInvalidArgument);
  cfg = cities4();
  cfg.collinearity_threshold = 1.5;
  EXPECT_EQ(code_of([&] { validate(cfg); }), ErrorCode::kInvalidArgument);
  cfg = cities4();
  cfg.log_transform = true;
  cfg.attrs_path = kFixtures + "/cities4_attrs.csv";
  EXPECT_NO_THROW(run_pipeline(cfg));
}

TEST(Pipeline, SchemaMismatch) {
  const RawAttributeTable attrs({"A", "B", "C"}, testing::vec({1, 2, 3}),
                                testing::vec({3, 1, 2}));
  const DistanceMatrix d(testing::mat({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}),
                         {"A", "C", "B"});
  EXPECT_EQ(code_of([&] { run_analysis(attrs, d, cities4()); }), ErrorCode::kSchemaError);
}

}  // namespace
}  // namespace spatialcorr
