#include <benchmark/benchmark.h>

#include "stsense/analytic.hpp"
#include "stsense/special_functions.hpp"

namespace {

void BM_IncompleteBeta(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  double y = 0.0;
  for (auto _ : state) {
    y += 1e-6;
    if (y >= 1.0) y = 1e-6;
    benchmark::DoNotOptimize(stsense::regularized_incomplete_beta(y, a, 17.0));
  }
}
BENCHMARK(BM_IncompleteBeta)->Arg(3)->Arg(95)->Arg(395);

void BM_ThresholdInversion(benchmark::State& state) {
  double p = 0.0;
  for (auto _ : state) {
    p += 1e-4;
    if (p >= 1.0) p = 1e-4;
    benchmark::DoNotOptimize(stsense::threshold_for_pfa(p, 4, 200));
  }
}
BENCHMARK(BM_ThresholdInversion);

void BM_H0BetaParams(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(stsense::h0_beta_params(4, 400));
  }
}
BENCHMARK(BM_H0BetaParams);

void BM_ExactK2H1Cdf(benchmark::State& state) {
  const double gap = static_cast<double>(state.range(0));
  double y = 0.0;
  for (auto _ : state) {
    y += 1e-3;
    if (y >= 1.0) y = 1e-3;
    benchmark::DoNotOptimize(stsense::h1_cdf_exact_k2(y, 1.0 + gap, 1.0, 50));
  }
}
BENCHMARK(BM_ExactK2H1Cdf)->Arg(1)->Arg(9);

void BM_ExactK3H0Cdf(benchmark::State& state) {
  double y = 0.0;
  for (auto _ : state) {
    y += 1e-3;
    if (y >= 1.0) y = 1e-3;
    benchmark::DoNotOptimize(stsense::h0_cdf_exact_k3(y, 20));
  }
}
BENCHMARK(BM_ExactK3H0Cdf);

}  // namespace
