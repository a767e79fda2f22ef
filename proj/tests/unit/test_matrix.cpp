#include <doctest.h>

#include <cmath>
#include <complex>

#include "stsense/matrix.hpp"

using namespace stsense;

TEST_CASE("gaussian matrix sampling moments and determinism") {
  RandomStream rng(11, StreamDomain::Generic, 0);
  const ComplexMatrix X = sample_standard_complex_gaussian(100, 10000, rng);

  double power = 0.0;
  std::complex<double> mean = 0.0;
  for (int j = 0; j < X.cols(); ++j) {
    for (int i = 0; i < X.rows(); ++i) {
      power += std::norm(X(i, j));
      mean += X(i, j);
    }
  }
  const double n = static_cast<double>(X.size());
  power /= n;
  mean /= n;
  CHECK(std::fabs(power - 1.0) <= 0.005);
  CHECK(std::fabs(mean.real()) <= 0.005);
  CHECK(std::fabs(mean.imag()) <= 0.005);

  RandomStream r1(99, StreamDomain::Generic, 3), r2(99, StreamDomain::Generic, 3);
  const ComplexMatrix A = sample_standard_complex_gaussian(4, 7, r1);
  const ComplexMatrix B = sample_standard_complex_gaussian(4, 7, r2);
  CHECK(A == B);
}

TEST_CASE("hermitian_eigenvalues on known matrices") {
  CHECK(hermitian_eigenvalues(ComplexMatrix::Identity(3, 3)) == std::vector<double>{1.0, 1.0, 1.0});

  ComplexMatrix D = ComplexMatrix::Zero(3, 3);
  D(0, 0) = 5.0;
  D(1, 1) = 2.0;
  D(2, 2) = 9.0;
  CHECK(hermitian_eigenvalues(D) == std::vector<double>{9.0, 5.0, 2.0});

  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), std::invalid_argument);
}

TEST_CASE("hermitian_eigenvalues trace and Frobenius oracles") {
  RandomStream rng(5, StreamDomain::Generic, 1);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix G = sample_standard_complex_gaussian(4, 4, rng);
    const ComplexMatrix A = G + G.adjoint();
    const auto eigs = hermitian_eigenvalues(A);
    double sum = 0.0, sum_sq = 0.0;
    for (const double v : eigs) sum += v, sum_sq += v * v;
    CHECK(std::fabs(sum - A.trace().real()) <= 1e-10 * std::max(1.0, std::fabs(sum)));
    CHECK(std::fabs(sum_sq - A.squaredNorm()) <= 1e-10 * std::max(1.0, sum_sq));
    for (std::size_t i = 1; i < eigs.size(); ++i) CHECK(eigs[i - 1] >= eigs[i]);
  }
}

TEST_CASE("build_covariance spans the signal model") {
  RandomStream rng(17, StreamDomain::Channel, 0);

  const CovarianceModel h0 = build_covariance(4, 1.0, {}, rng);
  CHECK(h0.white);
  CHECK(h0.sigma_eigs == std::vector<double>{1.0, 1.0, 1.0, 1.0});

  const CovarianceModel one = build_covariance(2, 1.0, {0.0}, rng);
  CHECK(one.sigma_eigs[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(one.sigma_eigs[1] == doctest::Approx(1.0).epsilon(1e-12));

  // trace additivity for the three-user scenario
  const CovarianceModel fig2 = build_covariance(4, 1.0, {-1.0, -3.0, -10.0}, rng);
  const double expected_trace =
      4.0 + std::pow(10.0, -0.1) + std::pow(10.0, -0.3) + std::pow(10.0, -1.0);
  double trace = 0.0;
  for (const double v : fig2.sigma_eigs) trace += v;
  CHECK(std::fabs(trace - expected_trace) <= 1e-10);

  for (int i = 0; i < fig2.channels.cols(); ++i) {
    CHECK(std::fabs(fig2.channels.col(i).norm() - 1.0) <= 1e-12);
  }
  for (const double v : fig2.sigma_eigs) CHECK(v >= fig2.sigma2 - 1e-9);

  // more users than sensors is allowed
  const CovarianceModel p6 = build_covariance(4, 1.0, {0.0, -1.0, -3.0, -8.0, -10.0, -22.0}, rng);
  CHECK(p6.channels.cols() == 6);
  CHECK(static_cast<int>(p6.sigma_eigs.size()) == 4);

  // zero linear SNR (dB -> -inf) behaves like no users at all
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const CovarianceModel zeroed = build_covariance(3, 2.0, {neg_inf, neg_inf}, rng);
  const CovarianceModel empty = build_covariance(3, 2.0, {}, rng);
  CHECK(zeroed.sigma_eigs == empty.sigma_eigs);

  CHECK_THROWS_AS(build_covariance(4, 0.0, {}, rng), std::domain_error);
  CHECK_THROWS_AS(build_covariance(4, -1.0, {}, rng), std::domain_error);
}

TEST_CASE("sample_covariance_matrix properties") {
  RandomStream channel(23, StreamDomain::Channel, 0);
  const CovarianceModel model = build_covariance(2, 1.0, {3.0}, channel);

  RandomStream rng(23, StreamDomain::H1Trial, 0);
  const ComplexMatrix rank1 = sample_covariance_matrix(model, 1, rng);
  const auto eigs1 = hermitian_eigenvalues(rank1);
  CHECK(std::fabs(eigs1[1]) <= 1e-10);

  for (int rep = 0; rep < 50; ++rep) {
    const ComplexMatrix R = sample_covariance_matrix(model, 6, rng);
    CHECK((R - R.adjoint()).norm() <= 1e-12 * std::max(1.0, R.norm()));
    for (const double v : hermitian_eigenvalues(R)) CHECK(v >= -1e-10);
  }
}

TEST_CASE("sample covariance empirical mean matches sigma^2 I under H0") {
  RandomStream channel(29, StreamDomain::Channel, 0);
  const CovarianceModel model = build_covariance(2, 1.0, {}, channel);
  const int N = 4;
  const long draws = 100000;
  ComplexMatrix acc = ComplexMatrix::Zero(2, 2);
  for (long t = 0; t < draws; ++t) {
    RandomStream rng(29, StreamDomain::H0Trial, static_cast<std::uint64_t>(t));
    acc += sample_covariance_matrix(model, N, rng);
  }
  acc /= static_cast<double>(draws * N);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      CHECK(std::abs(acc(i, j) - expected) <= 0.01);
    }
  }
}
