#include <benchmark/benchmark.h>

#include "stsense/matrix.hpp"
#include "stsense/simulate.hpp"

namespace {

void BM_ComplexGaussianMatrix(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const int N = static_cast<int>(state.range(1));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    stsense::RandomStream rng(7, stsense::StreamDomain::Generic, trial++);
    benchmark::DoNotOptimize(stsense::sample_standard_complex_gaussian(K, N, rng));
  }
  state.SetItemsProcessed(state.iterations() * K * N);
}
BENCHMARK(BM_ComplexGaussianMatrix)->Args({4, 50})->Args({4, 400})->Args({8, 50});

void BM_CovarianceTrial(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const int N = static_cast<int>(state.range(1));
  stsense::RandomStream channels(3, stsense::StreamDomain::Channel, 0);
  const auto model = stsense::build_covariance(K, 1.0, {-1.0, -3.0}, channels);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    stsense::RandomStream rng(3, stsense::StreamDomain::H1Trial, trial++);
    const auto R = stsense::sample_covariance_matrix(model, N, rng);
    benchmark::DoNotOptimize(stsense::hermitian_eigenvalues(R));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CovarianceTrial)->Args({4, 50})->Args({4, 200})->Args({4, 400})->Args({8, 50});

void BM_RunHypothesis(benchmark::State& state) {
  stsense::Scenario s;
  s.K = 4;
  s.N = static_cast<int>(state.range(0));
  s.trials = 2000;
  s.seed = 5;
  s.snrs_db = {-1.0, -3.0, -10.0};
  s.detectors = {stsense::DetectorKind::ST, stsense::DetectorKind::ER, stsense::DetectorKind::JOHN,
                 stsense::DetectorKind::LE, stsense::DetectorKind::SLE, stsense::DetectorKind::ED};
  s.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stsense::run_hypothesis(s, stsense::Hypothesis::H1));
  }
  state.SetItemsProcessed(state.iterations() * s.trials);
}
BENCHMARK(BM_RunHypothesis)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
