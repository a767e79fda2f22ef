#include <benchmark/benchmark.h>

#include <vector>

#include "stsense/detectors.hpp"
#include "stsense/rng.hpp"

namespace {

std::vector<double> random_eigs(int K) {
  stsense::RandomStream rng(1, stsense::StreamDomain::Generic, K);
  std::vector<double> eigs(K);
  for (double& v : eigs) v = 0.1 + rng.next_uniform();
  return eigs;
}

void BM_StStatistic(benchmark::State& state) {
  const auto eigs = random_eigs(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stsense::st_statistic(eigs));
  }
}
BENCHMARK(BM_StStatistic)->Arg(4)->Arg(8);

void BM_AllStatistics(benchmark::State& state) {
  const auto eigs = random_eigs(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const auto kind :
         {stsense::DetectorKind::ST, stsense::DetectorKind::ER, stsense::DetectorKind::JOHN,
          stsense::DetectorKind::LE, stsense::DetectorKind::SLE, stsense::DetectorKind::ED}) {
      benchmark::DoNotOptimize(stsense::evaluate_statistic(kind, eigs));
    }
  }
}
BENCHMARK(BM_AllStatistics)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
