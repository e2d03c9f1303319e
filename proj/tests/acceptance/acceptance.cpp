// Acceptance suite: one PASS/FAIL line per criterion.
//
//   spatialcorr_acceptance --cli <path to spatialcorr executable>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spatialcorr/correlation.hpp"
#include "spatialcorr/decomposition.hpp"
#include "spatialcorr/error.hpp"
#include "spatialcorr/regression.hpp"
#include "spatialcorr/weights.hpp"

namespace fs = std::filesystem;
using namespace spatialcorr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

bool within_rel(double value, double expected, double rel) {
  return std::abs(value - expected) <= rel * std::abs(expected);
}

const SpatialCorrelationMatrix kC2010{-0.1812, -0.1287, -0.1287, -0.0694};
const SpatialCorrelationMatrix kC2000{-0.1940, -0.1459, -0.1459, -0.0968};

struct Synthetic {
  StandardizedVector x;
  StandardizedVector y;
  SpatialWeightMatrix w;
};

Synthetic synthetic(std::mt19937_64& rng, std::size_t n) {
  const auto inst = oracle::random_instance(rng, n);
  Matrix r(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = inst.points[i][0] - inst.points[j][0];
      const double dy = inst.points[i][1] - inst.points[j][1];
      r(i, j) = std::sqrt(dx * dx + dy * dy);
    }
  return Synthetic{zscore(oracle::to_eigen(inst.x_raw)),
                   zscore(oracle::to_eigen(inst.y_raw)),
                   normalize_global(inverse_distance_contiguity(DistanceMatrix(r)))};
}

Outcome canonical_decomposition() {
  const auto r10 = decompose_canonical(0.9534, kC2010);
  const auto r00 = decompose_canonical(0.9571, kC2000);
  Outcome o;
  o.pass = within_rel(r10.beta1, -2.9388, 0.02) && within_rel(r10.beta2, 4.1392, 0.02) &&
           within_rel(r00.beta1, -4.9221, 0.02) && within_rel(r00.beta2, 6.5455, 0.02);
  o.detail = "2010 beta1=" + fmt("%.4f", r10.beta1) + " beta2=" + fmt("%.4f", r10.beta2) +
             "; 2000 beta1=" + fmt("%.4f", r00.beta1) + " beta2=" + fmt("%.4f", r00.beta2);
  return o;
}

Outcome constant_term_check() {
  const double a = constant_term(-2.9388, 4.1392, 0.1137, 0.1256);
  return Outcome{std::abs(a - -0.1858) <= 0.001, "a=" + fmt("%.4f", a)};
}

Outcome identity_table() {
  const auto r10 = decompose_canonical(0.9534, kC2010);
  const auto r00 = decompose_canonical(0.9571, kC2000);
  const auto c10 = identity_check(r10.input, r10.beta1, r10.beta2);
  const auto c00 = identity_check(r00.input, r00.beta1, r00.beta2);
  Outcome o;
  // b = R makes the right side exactly 0. The left side is evaluated from
  // rounded betas, so it is 0 only up to rounding of O(1) terms.
  for (const auto* c : {&c10, &c00}) {
    o.pass = o.pass && c->eq21_right == 0.0 && std::abs(c->eq21_left) <= 1e-15;
  }
  o.pass = o.pass && std::abs(c10.eq24_left - 0.0910) <= 5e-3 &&
           std::abs(c10.eq24_right - 0.0910) <= 5e-3 &&
           std::abs(c00.eq24_left - 0.0840) <= 5e-3 &&
           std::abs(c00.eq24_right - 0.0840) <= 5e-3;
  o.detail = "eq21 2010 " + fmt("%.3g", c10.eq21_left) + "|" + fmt("%.3g", c10.eq21_right) +
             ", 2000 " + fmt("%.3g", c00.eq21_left) + "|" + fmt("%.3g", c00.eq21_right) +
             "; eq24 2010 " + fmt("%.4f", c10.eq24_left) + "|" +
             fmt("%.4f", c10.eq24_right) + ", 2000 " + fmt("%.4f", c00.eq24_left) + "|" +
             fmt("%.4f", c00.eq24_right);
  return o;
}

Outcome ols_round_trip() {
  const auto start = Clock::now();
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> size(6, 50);
  int checked = 0;
  int skipped = 0;
  double worst_beta = 0.0;
  double worst_gap = 0.0;
  for (int trial = 0; checked < 200 && trial < 1000; ++trial) {
    const auto s = synthetic(rng, size(rng));
    const auto c = spatial_correlation_matrix(s.x, s.y, s.w);
    if (std::abs(c.i_x * c.i_y - c.i_xy * c.i_xy) < 1e-6) {
      ++skipped;
      continue;
    }
    const auto fit = ols_fit(
        build_design_matrix(ModelSpec::defaults(ModelVariant::kGeneral), s.x, s.y, s.w),
        s.y.values());
    const DecompositionInput in{pearson_r(s.x, s.y), fit.coefficient(Term::kX),
                                residual_variance(fit), c};
    const auto res = decompose_full(in);
    const double b1 = fit.coefficient(Term::kLag);
    const double b2 = fit.coefficient(Term::kAuto);
    worst_beta = std::max({worst_beta, std::abs(res.beta1 - b1), std::abs(res.beta2 - b2)});
    worst_gap = std::max(worst_gap, identity_check(in, b1, b2).max_abs_gap);
    ++checked;
  }
  const double t = seconds_since(start);
  Outcome o;
  o.pass = checked >= 100 && worst_beta <= 1e-8 && worst_gap <= 1e-10 && t < 5.0;
  o.detail = std::to_string(checked) + " instances (" + std::to_string(skipped) +
             " near-singular skipped), max |dbeta|=" + fmt("%.2e", worst_beta) +
             ", max identity gap=" + fmt("%.2e", worst_gap) + ", " + fmt("%.2f", t) + " s";
  return o;
}

Outcome simple_regression() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(6, 60);
  double worst_a = 0.0;
  double worst_b = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = synthetic(rng, size(rng));
    const auto fit = ols_fit(
        build_design_matrix(ModelSpec::defaults(ModelVariant::kOlsSimple), s.x, s.y, s.w),
        s.y.values());
    worst_a = std::max(worst_a, std::abs(fit.coefficient(Term::kIntercept)));
    worst_b = std::max(worst_b, std::abs(fit.coefficient(Term::kX) - pearson_r(s.x, s.y)));
  }
  return Outcome{worst_a <= 1e-10 && worst_b <= 1e-10,
                 "200 instances, max |a|=" + fmt("%.2e", worst_a) + ", max |b-R|=" +
                     fmt("%.2e", worst_b)};
}

Outcome temporal_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(2, 100);
  std::normal_distribution<double> noise;
  double worst = 0.0;
  std::size_t lags = 0;
  for (int series = 0; series < 50; ++series) {
    const std::size_t n = series == 0 ? 100 : size(rng);
    oracle::Vec raw(n);
    for (auto& v : raw) v = noise(rng) + 0.05 * static_cast<double>(&v - raw.data());
    const auto z = zscore(oracle::to_eigen(raw));
    const auto zv = oracle::to_vec(z.values());
    for (std::size_t tau = 1; tau < n; ++tau) {
      worst = std::max(worst, std::abs(temporal_acf(z, static_cast<Eigen::Index>(tau)) -
                                       oracle::acf_direct(zv, tau)));
      ++lags;
    }
  }
  const double t = seconds_since(start);
  return Outcome{worst <= 1e-12 && t < 2.0,
                 "50 series, " + std::to_string(lags) + " lags, max gap=" +
                     fmt("%.2e", worst) + ", " + fmt("%.2f", t) + " s"};
}

Outcome slope_identity() {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> size(6, 60);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = size(rng);
    const auto inst = oracle::random_instance(rng, n);
    const auto x = oracle::standardize(inst.x_raw);
    const auto y = oracle::standardize(inst.y_raw);
    const auto zx = zscore(oracle::to_eigen(inst.x_raw));
    const auto zy = zscore(oracle::to_eigen(inst.y_raw));
    const auto w = normalize_global(ContiguityMatrix(oracle::to_eigen(inst.w)));
    for (const auto& [z1, z2, a, b] :
         {std::tuple{&zx, &zy, &x, &y}, std::tuple{&zy, &zx, &y, &x},
          std::tuple{&zx, &zx, &x, &x}}) {
      const auto test = significance_by_regression(*z1, *z2, w);
      worst = std::max(worst, std::abs(test.statistic - oracle::double_sum(inst.w, *a, *b)));
    }
  }
  return Outcome{worst <= 1e-12, "600 slopes, max |slope - z1'Wz2|=" + fmt("%.2e", worst)};
}

Outcome collinearity_algebra() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_q = 0.0;
  int singular = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    const double ix = u(rng);
    const double d = 4.0 * u(rng);
    // I_xy = d I_x and I_y = d I_yx.
    const double ixy = d * ix;
    const SpatialCorrelationMatrix c{ix, ixy, ixy, d * ixy};
    worst_q = std::max(worst_q, std::abs(collinearity_q(c).q));
    try {
      decompose_full(DecompositionInput{0.5, 0.2, 0.1, c});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kSingularSystem) ++singular;
    }
  }
  return Outcome{worst_q <= 1e-12 && singular == trials,
                 std::to_string(trials) + " constructions, max |Q|=" + fmt("%.2e", worst_q) +
                     ", SingularSystem " + std::to_string(singular) + "/" +
                     std::to_string(trials)};
}

Outcome weight_invariants() {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<Eigen::Index> size(2, 60);
  std::uniform_real_distribution<double> dist(0.01, 500.0);
  double worst_sym = 0.0;
  double worst_diag = 0.0;
  double worst_sum = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = size(rng);
    Matrix r = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) r(i, j) = r(j, i) = dist(rng);
    const auto w = normalize_global(inverse_distance_contiguity(DistanceMatrix(r)));
    worst_sym = std::max(worst_sym, (w.values() - w.values().transpose()).cwiseAbs().maxCoeff());
    worst_diag = std::max(worst_diag, w.values().diagonal().cwiseAbs().maxCoeff());
    worst_sum = std::max(worst_sum, std::abs(w.values().sum() - 1.0));
  }
  Matrix r2(2, 2);
  r2 << 0, 7.3, 7.3, 0;
  const auto w2 = normalize_global(inverse_distance_contiguity(DistanceMatrix(r2)));
  Vector raw(2);
  raw << 1, -1;
  const double moran = morans_index(zscore(raw), w2);
  Outcome o;
  o.pass = worst_sym <= 1e-12 && worst_diag == 0.0 && worst_sum <= 1e-12 && moran == -1.0;
  o.detail = "300 matrices, max asym=" + fmt("%.2e", worst_sym) + ", max |diag|=" +
             fmt("%.2e", worst_diag) + ", max |sum-1|=" + fmt("%.2e", worst_sum) +
             "; n=2 Moran=" + fmt("%.17g", moran);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& cmd) {
  const int rc = std::system((cmd + " >/dev/null 2>&1").c_str());
  return rc;
}

void write_large_fixture(const fs::path& dir, std::size_t n) {
  std::mt19937_64 rng(2000);
  const auto inst = oracle::random_instance(rng, n);
  std::ofstream attrs(dir / "attrs.csv");
  attrs << "id,x,y\n";
  char buf[64];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof(buf), "u%zu,%.10g,%.10g\n", i, inst.x_raw[i], inst.y_raw[i]);
    attrs << buf;
  }
  std::ofstream dist(dir / "dist.csv");
  dist << "id";
  for (std::size_t i = 0; i < n; ++i) dist << ",u" << i;
  dist << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    dist << 'u' << i;
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = inst.points[i][0] - inst.points[j][0];
      const double dy = inst.points[i][1] - inst.points[j][1];
      std::snprintf(buf, sizeof(buf), ",%.8g", std::sqrt(dx * dx + dy * dy));
      dist << buf;
    }
    dist << '\n';
  }
}

Outcome pipeline_determinism(const std::string& cli) {
  if (cli.empty()) return Outcome{false, "no --cli given"};
  const fs::path dir = fs::temp_directory_path() /
                       ("spatialcorr_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const std::string data = SPATIALCORR_FIXTURE_DIR "/../../data/";
  const std::string base = "\"" + cli + "\" report --attrs " + data +
                           "synthetic13_attrs.csv --dist " + data +
                           "synthetic13_mileage.csv --log --seed 11 --permutations 999";
  const fs::path a = dir / "a.json", b = dir / "b.json", c = dir / "c.json";
  const int rc = run(base + " --out " + a.string()) | run(base + " --out " + b.string()) |
                 run(base + " --threads 8 --out " + c.string());
  const std::string ja = slurp(a);
  const bool same = rc == 0 && !ja.empty() && ja == slurp(b) && ja == slurp(c);

  const std::size_t n = 2000;
  write_large_fixture(dir, n);
  const auto start = Clock::now();
  const int big = run("\"" + cli + "\" report --attrs " + (dir / "attrs.csv").string() +
                      " --dist " + (dir / "dist.csv").string() + " --threads 0 --out " +
                      (dir / "big.json").string());
  const double t = seconds_since(start);
  const bool big_ok = big == 0 && fs::file_size(dir / "big.json") > 0;
  fs::remove_all(dir);

  return Outcome{same && big_ok && t < 10.0,
                 std::string("repeat and serial/8-thread reports ") +
                     (same ? "byte-identical" : "DIFFER") + " (" +
                     std::to_string(ja.size()) + " bytes); n=2000 report " +
                     (big_ok ? "ok" : "FAILED") + " in " + fmt("%.2f", t) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"canonical decomposition of the published correlation matrices", canonical_decomposition},
      {"constant term from published betas and lag means", constant_term_check},
      {"theoretical identity table", identity_table},
      {"OLS round trip through the Cramer system", ols_round_trip},
      {"simple regression gives a = 0 and b = R", simple_regression},
      {"temporal autocorrelation matrix form equals direct sum", temporal_equivalence},
      {"significance regression slope equals z1'Wz2", slope_identity},
      {"proportional correlation matrices are singular", collinearity_algebra},
      {"weight matrix invariants", weight_invariants},
      {"pipeline determinism and n = 2000 runtime", [&] { return pipeline_determinism(cli); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
