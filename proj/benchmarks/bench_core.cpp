#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "spatialcorr/correlation.hpp"
#include "spatialcorr/decomposition.hpp"
#include "spatialcorr/regression.hpp"
#include "spatialcorr/weights.hpp"

namespace {

using namespace spatialcorr;

struct Problem {
  StandardizedVector x;
  StandardizedVector y;
  SpatialWeightMatrix w;
};

Problem make_problem(Eigen::Index n) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(n));
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  std::normal_distribution<double> noise;
  Matrix pts(n, 2);
  Vector x(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    pts(i, 0) = coord(rng);
    pts(i, 1) = coord(rng);
    x[i] = 0.02 * pts(i, 0) + noise(rng);
    y[i] = 0.5 * x[i] + noise(rng);
  }
  Matrix r(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) r(i, j) = (pts.row(i) - pts.row(j)).norm();
  return Problem{zscore(x), zscore(y),
                 normalize_global(inverse_distance_contiguity(DistanceMatrix(r)))};
}

void BM_Weights(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  Matrix r = Matrix::Constant(n, n, 3.0);
  r.diagonal().setZero();
  const DistanceMatrix d(r);
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize_global(inverse_distance_contiguity(d)));
  }
}
BENCHMARK(BM_Weights)->Arg(100)->Arg(500)->Arg(2000);

void BM_CorrelationMatrix(benchmark::State& state) {
  const auto p = make_problem(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spatial_correlation_matrix(p.x, p.y, p.w));
  }
}
BENCHMARK(BM_CorrelationMatrix)->Arg(100)->Arg(500)->Arg(2000);

void BM_GeneralFit(benchmark::State& state) {
  const auto p = make_problem(state.range(0));
  const auto design =
      build_design_matrix(ModelSpec::defaults(ModelVariant::kGeneral), p.x, p.y, p.w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ols_fit(design, p.y.values()));
  }
}
BENCHMARK(BM_GeneralFit)->Arg(100)->Arg(500)->Arg(2000);

void BM_Permutation(benchmark::State& state) {
  const auto p = make_problem(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(significance_by_permutation(p.x, p.y, p.w, 999, 1, threads));
  }
}
BENCHMARK(BM_Permutation)->Args({500, 1})->Args({500, 4})->Args({2000, 1})->Args({2000, 4});

void BM_Decompose(benchmark::State& state) {
  const SpatialCorrelationMatrix c{-0.1812, -0.1287, -0.1287, -0.0694};
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose_full(DecompositionInput{0.9534, 1.0087, 0.0583, c}));
  }
}
BENCHMARK(BM_Decompose);

}  // namespace

BENCHMARK_MAIN();
