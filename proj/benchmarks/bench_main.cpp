#include "hksym/deformation.hpp"
#include "hksym/lie_model.hpp"
#include "hksym/operators.hpp"
#include "hksym/orbit.hpp"
#include "hksym/suites.hpp"

#include <benchmark/benchmark.h>

using namespace hksym;

namespace {

// state.range(0), state.range(1) are p and q
AlgebraModel model_of(const benchmark::State& state) {
  return AlgebraModel(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
}

void BM_SpectralOps(benchmark::State& state) {
  const AlgebraModel model = model_of(state);
  Rng rng(7);
  const Mat z = random_m0(model, rng);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_ops(model, z));
}

void BM_SeriesOp(benchmark::State& state) {
  const AlgebraModel model = model_of(state);
  Rng rng(7);
  const Mat z = random_m0(model, rng);
  for (auto _ : state) benchmark::DoNotOptimize(series_op(model, SeriesKind::E, z));
}

void BM_Spectrum(benchmark::State& state) {
  const AlgebraModel model = model_of(state);
  Rng rng(7);
  const Mat z = random_m0(model, rng);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_m0(model, z));
}

void BM_TLambda(benchmark::State& state) {
  const AlgebraModel model = model_of(state);
  Rng rng(7);
  const OrbitPoint pt = random_orbit_point(model, rng);
  const cplx lambda(0.3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(T_lambda(model, lambda, pt));
}

void BM_Suite(benchmark::State& state, const char* suite) {
  const AlgebraModel model = model_of(state);
  SuiteConfig cfg;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(suite, model, cfg));
}

void model_args(benchmark::internal::Benchmark* b) {
  b->Args({1, 1})->Args({2, 1})->Args({2, 2})->Args({3, 2});
}

}  // namespace

BENCHMARK(BM_SpectralOps)->Apply(model_args);
BENCHMARK(BM_SeriesOp)->Apply(model_args);
BENCHMARK(BM_Spectrum)->Apply(model_args);
BENCHMARK(BM_TLambda)->Apply(model_args);
BENCHMARK_CAPTURE(BM_Suite, operators, "operators")->Args({2, 2})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, deformation, "deformation")->Args({2, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
