#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "stsense/analytic.hpp"
#include "stsense/simulate.hpp"
#include "stsense/special_functions.hpp"

using namespace stsense;

namespace {

Scenario st_scenario(int K, int N, long trials, std::uint64_t seed) {
  Scenario s;
  s.K = K;
  s.N = N;
  s.trials = trials;
  s.seed = seed;
  s.detectors = {DetectorKind::ST};
  return s;
}

double ks_against(const std::function<double(double)>& cdf, std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    sup = std::max(sup, std::fabs(f - i / n));
    sup = std::max(sup, std::fabs((i + 1) / n - f));
  }
  return sup;
}

}  // namespace

TEST_CASE("H0 statistic mean matches the first analytic moment") {
  const auto samples = run_hypothesis(st_scenario(2, 4, 1000000, 42), Hypothesis::H0);
  double mean = 0.0;
  for (const double v : samples[0].values) mean += v;
  mean /= static_cast<double>(samples[0].values.size());
  CHECK(std::fabs(mean - 2.0 / 3.0) <= 0.002);
}

TEST_CASE("empirical CDF of uniforms obeys the DKW envelope") {
  RandomStream rng(7, StreamDomain::Generic, 0);
  std::vector<double> uniforms(1000000);
  for (double& u : uniforms) u = rng.next_uniform();
  const EmpiricalCdf cdf(std::move(uniforms));
  double sup = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = i / 2000.0;
    sup = std::max(sup, std::fabs(cdf(x) - x));
  }
  CHECK(sup <= 0.002);
}

TEST_CASE("exact K=2 H0 law matches simulation") {
  const auto samples = run_hypothesis(st_scenario(2, 4, 1000000, 11), Hypothesis::H0);
  const EmpiricalCdf emp(samples[0].values);
  CHECK(std::fabs(h0_cdf_exact_k2(0.75, 4) - emp(0.75)) <= 2e-3);
}

TEST_CASE("exact K=3 H0 series matches simulation in sup norm") {
  const auto samples = run_hypothesis(st_scenario(3, 20, 1000000, 12), Hypothesis::H0);
  const EmpiricalCdf emp(samples[0].values);
  double sup = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double y = i / 500.0;
    sup = std::max(sup, std::fabs(h0_cdf_exact_k3(y, 20) - emp(y)));
  }
  CHECK(sup <= 2e-3);
}

TEST_CASE("H1 first moment tracks simulation for a correlated spectrum") {
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 1);
  e1(0, 0) = 1.0;
  const CovarianceModel model = build_covariance_from_channels(1.0, {0.0}, e1);  // diag(2,1)
  Scenario s = st_scenario(2, 10, 1000000, 13);
  s.snrs_db = {0.0};
  const auto samples = run_hypothesis(s, Hypothesis::H1, model, 0);
  double mean = 0.0;
  for (const double v : samples[0].values) mean += v;
  mean /= static_cast<double>(samples[0].values.size());
  CHECK(std::fabs(mean - h1_moment(model, 10, 1)) <= 0.003);
}

TEST_CASE("exact K=2 H1 law matches simulation at reduced scale") {
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 1);
  e1(0, 0) = 1.0;
  const CovarianceModel model = build_covariance_from_channels(1.0, {0.0}, e1);
  Scenario s = st_scenario(2, 10, 200000, 14);
  s.snrs_db = {0.0};
  const auto samples = run_hypothesis(s, Hypothesis::H1, model, 0);
  const double sup = ks_against(
      [&](double y) { return h1_cdf_exact_k2(y, model.sigma_eigs[0], model.sigma_eigs[1], 10); },
      samples[0].values);
  CHECK(sup <= 1.63 / std::sqrt(200000.0) + 1e-3);
}

TEST_CASE("spherical test dominates the eigenvalue-ratio detector") {
  Scenario s;
  s.K = 4;
  s.N = 200;
  s.snrs_db = {-1.0, -3.0, -10.0};
  s.trials = 100000;
  s.seed = 21;
  s.detectors = {DetectorKind::ST, DetectorKind::ER};
  const auto h0 = run_hypothesis(s, Hypothesis::H0);
  const auto h1 = run_hypothesis(s, Hypothesis::H1);
  const RocCurve st = empirical_roc(h0[0], h1[0], DetectorKind::ST);
  const RocCurve er = empirical_roc(h0[1], h1[1], DetectorKind::ER);

  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  const RocCurve analytic = roc_analytic(scenario_model(s, Hypothesis::H1), s.N, grid);

  const double two_se = 2.0 * std::sqrt(0.25 / static_cast<double>(s.trials));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(pd_at_pfa(st, grid[i]) >= pd_at_pfa(er, grid[i]) - 2.0 * two_se);
    CHECK(analytic.points[i].pd >= pd_at_pfa(er, grid[i]) - 0.01);
  }
}

TEST_CASE("empirical H0 CDF converges to the Beta fit") {
  for (const auto& [K, N] : {std::pair{4, 20}, {4, 50}, {8, 50}}) {
    const long trials = 200000;
    const auto samples = run_hypothesis(st_scenario(K, N, trials, 15), Hypothesis::H0);
    const BetaParams p = h0_beta_params(K, N);
    const double sup = ks_against(
        [&](double y) { return regularized_incomplete_beta(y, p.alpha, p.beta); },
        samples[0].values);
    CHECK(sup <= 1.63 / std::sqrt(static_cast<double>(trials)) + 2e-3);
  }
}
