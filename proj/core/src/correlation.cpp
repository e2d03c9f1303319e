#include "spatialcorr/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>
#include <vector>

#include "spatialcorr/error.hpp"
#include "spatialcorr/regression.hpp"
#include "spatialcorr/stats.hpp"

namespace spatialcorr {

namespace {

void check_lengths(const StandardizedVector& x, const StandardizedVector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "vectors have lengths " + std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  }
}

void check_weights(Eigen::Index n, const Matrix& w) {
  if (w.rows() != n || w.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "weight matrix is " + std::to_string(w.rows()) + "x" +
                    std::to_string(w.cols()) + " but data has " +
                    std::to_string(n) + " units");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform integer in [0, bound) by rejection; std::uniform_int_distribution
// is implementation defined and would make p-values stdlib dependent.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

// Counts permutations in [begin, end) whose statistic is at least as extreme
// as the observed one.
long count_extreme(const Vector& lagged_z1, const Vector& z2, double observed,
                   std::uint64_t seed, int begin, int end) {
  const Eigen::Index n = z2.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  const double threshold = std::abs(observed) * (1.0 - 1e-12);
  long count = 0;
  for (int p = begin; p < end; ++p) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(p))));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    for (Eigen::Index i = n - 1; i > 0; --i) {
      const auto j = static_cast<Eigen::Index>(
          bounded(rng, static_cast<std::uint64_t>(i + 1)));
      std::swap(order[static_cast<std::size_t>(i)],
                order[static_cast<std::size_t>(j)]);
    }
    double stat = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      stat += lagged_z1[i] * z2[order[static_cast<std::size_t>(i)]];
    }
    if (std::abs(stat) >= threshold) ++count;
  }
  return count;
}

}  // namespace

double pearson_r(const StandardizedVector& x, const StandardizedVector& y) {
  check_lengths(x, y);
  return x.values().dot(y.values()) / static_cast<double>(x.size());
}

Eigen::Matrix2d pearson_matrix(const StandardizedVector& x,
                               const StandardizedVector& y) {
  check_lengths(x, y);
  const double n = static_cast<double>(x.size());
  const double r = pearson_r(x, y);
  Eigen::Matrix2d m;
  m << x.values().squaredNorm() / n, r, r, y.values().squaredNorm() / n;
  return m;
}

double morans_index(const StandardizedVector& z, const SpatialWeightMatrix& w) {
  return morans_index(z, w.values());
}

double morans_index(const StandardizedVector& z, const Matrix& w) {
  check_weights(z.size(), w);
  return z.values().dot(w * z.values());
}

double cross_correlation(const StandardizedVector& x,
                         const StandardizedVector& y,
                         const SpatialWeightMatrix& w) {
  return cross_correlation(x, y, w.values());
}

double cross_correlation(const StandardizedVector& x,
                         const StandardizedVector& y, const Matrix& w) {
  check_lengths(x, y);
  check_weights(x.size(), w);
  return x.values().dot(w * y.values());
}

Eigen::Matrix2d SpatialCorrelationMatrix::as_matrix() const {
  Eigen::Matrix2d m;
  m << i_x, i_xy, i_yx, i_y;
  return m;
}

SpatialCorrelationMatrix spatial_correlation_matrix(
    const StandardizedVector& x, const StandardizedVector& y,
    const SpatialWeightMatrix& w) {
  return spatial_correlation_matrix(x, y, w.values());
}

SpatialCorrelationMatrix spatial_correlation_matrix(
    const StandardizedVector& x, const StandardizedVector& y, const Matrix& w) {
  check_lengths(x, y);
  check_weights(x.size(), w);
  const Vector wx = w * x.values();
  const Vector wy = w * y.values();
  SpatialCorrelationMatrix c;
  c.i_x = x.values().dot(wx);
  c.i_xy = x.values().dot(wy);
  c.i_yx = y.values().dot(wx);
  c.i_y = y.values().dot(wy);
  return c;
}

double residual_moran(const Vector& eps, const SpatialWeightMatrix& w) {
  return residual_moran(eps, w.values());
}

double residual_moran(const Vector& eps, const Matrix& w) {
  check_weights(eps.size(), w);
  // zscore rejects a zero-variance (perfect-fit) residual vector.
  return morans_index(zscore(eps), w);
}

std::string_view test_method_name(TestMethod m) noexcept {
  switch (m) {
    case TestMethod::kRegressionT: return "regression_t";
    case TestMethod::kPermutation: return "permutation";
  }
  return "unknown";
}

CorrelationTest significance_by_regression(const StandardizedVector& z1,
                                           const StandardizedVector& z2,
                                           const SpatialWeightMatrix& w) {
  return significance_by_regression(z1, z2, w.values());
}

CorrelationTest significance_by_regression(const StandardizedVector& z1,
                                           const StandardizedVector& z2,
                                           const Matrix& w) {
  check_lengths(z1, z2);
  check_weights(z1.size(), w);
  const Eigen::Index n = z1.size();
  if (n < 4) {
    throw Error(ErrorCode::kInsufficientData,
                "regression significance needs n >= 4");
  }
  DesignMatrix design;
  design.columns.resize(n, 2);
  design.columns.col(0).setOnes();
  design.columns.col(1) = z1.values();
  design.terms = {Term::kIntercept, Term::kX};

  RegressionFit fit;
  try {
    fit = least_squares(design, scaled_spatial_lag(w, z2.values()));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kRankDeficient) throw;
    throw Error(ErrorCode::kDegenerateRegression,
                "independent variable is constant");
  }

  const double df = static_cast<double>(n - 2);
  const double s2 = fit.residuals.squaredNorm() / df;
  CorrelationTest test;
  test.method = TestMethod::kRegressionT;
  test.statistic = fit.coefficients[1].value;
  test.slope_se = std::sqrt(s2 * fit.unscaled_covariance(1, 1));
  if (test.slope_se > 0.0) {
    test.t_value = test.statistic / test.slope_se;
    test.p_value = student_t_two_sided_p(test.t_value, df);
  } else if (test.statistic == 0.0) {
    test.t_value = 0.0;
    test.p_value = 1.0;
  } else {
    test.t_value =
        std::copysign(std::numeric_limits<double>::infinity(), test.statistic);
    test.p_value = 0.0;
  }
  return test;
}

CorrelationTest significance_by_permutation(const StandardizedVector& z1,
                                            const StandardizedVector& z2,
                                            const SpatialWeightMatrix& w,
                                            int permutations,
                                            std::uint64_t seed,
                                            unsigned threads) {
  return significance_by_permutation(z1, z2, w.values(), permutations, seed,
                                     threads);
}

CorrelationTest significance_by_permutation(const StandardizedVector& z1,
                                            const StandardizedVector& z2,
                                            const Matrix& w, int permutations,
                                            std::uint64_t seed,
                                            unsigned threads) {
  check_lengths(z1, z2);
  check_weights(z1.size(), w);
  if (permutations < kMinPermutations) {
    throw Error(ErrorCode::kInvalidArgument,
                "permutation test needs at least " +
                    std::to_string(kMinPermutations) + " permutations");
  }
  // W is symmetric, so z1'W pi(z2) = (W z1)' pi(z2): one mat-vec in total.
  const Vector lagged = w.transpose() * z1.values();
  const double observed = lagged.dot(z2.values());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(permutations));

  long extreme = 0;
  if (threads <= 1) {
    extreme = count_extreme(lagged, z2.values(), observed, seed, 0, permutations);
  } else {
    std::vector<long> counts(threads, 0);
    {
      std::vector<std::jthread> workers;
      workers.reserve(threads);
      const int chunk = (permutations + static_cast<int>(threads) - 1) /
                        static_cast<int>(threads);
      for (unsigned t = 0; t < threads; ++t) {
        const int begin = static_cast<int>(t) * chunk;
        const int end = std::min(permutations, begin + chunk);
        if (begin >= end) continue;
        workers.emplace_back([&, t, begin, end] {
          counts[t] =
              count_extreme(lagged, z2.values(), observed, seed, begin, end);
        });
      }
    }
    extreme = std::accumulate(counts.begin(), counts.end(), 0L);
  }

  CorrelationTest test;
  test.method = TestMethod::kPermutation;
  test.statistic = observed;
  test.slope_se = std::numeric_limits<double>::quiet_NaN();
  test.t_value = std::numeric_limits<double>::quiet_NaN();
  test.p_value = static_cast<double>(1 + extreme) /
                 static_cast<double>(permutations + 1);
  return test;
}

double temporal_acf(const StandardizedVector& z, Eigen::Index tau) {
  const Eigen::Index n = z.size();
  const TemporalWeightMatrix w = temporal_weights(temporal_contiguity(n, tau), n);
  return morans_index(z, w.values());
}

}  // namespace spatialcorr
