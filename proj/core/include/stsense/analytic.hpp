#pragma once

#include <span>
#include <vector>

#include "stsense/matrix.hpp"
#include "stsense/roc.hpp"

namespace stsense {

/// Parameters of a moment-matched Beta law.
struct BetaParams {
  double alpha = 0.0;
  double beta = 0.0;
  Hypothesis hypothesis = Hypothesis::H0;
};

/// Leading moments of the test statistic, values[i] holding moment i+1.
struct MomentSequence {
  std::vector<double> values;
  Hypothesis hypothesis = Hypothesis::H0;
};

/// n-th moment of the spherical-test statistic under H0 for K sensors and N
/// samples. Exact; 1 for K = 1. Requires N >= K.
double h0_moment(int K, int N, int n);

MomentSequence h0_moments(int K, int N, int max_n = 4);

/// Solves mean/second-moment equations for Beta(alpha, beta). Requires
/// 0 < M1 < 1 and M1^2 < M2 < M1.
BetaParams beta_match(double M1, double M2, Hypothesis hypothesis = Hypothesis::H0);

/// H0 Beta parameters (alpha_0, beta_0). Matches
/// beta_match(h0_moment(K,N,1), h0_moment(K,N,2)) but is evaluated in a
/// cancellation-free form, so it stays accurate when the statistic
/// concentrates near 1 (large N) and the moment differences underflow the
/// naive route. For K = 2 this reduces to (N-1, 3/2) up to rounding.
BetaParams h0_beta_params(int K, int N);

/// Rounds both parameters to the nearest integer (threshold polynomials
/// become solvable in closed form at some accuracy cost). Off by default
/// everywhere; opt-in.
BetaParams round_beta_params(const BetaParams& params);

/// Moment-matched Beta approximation to the H0 CDF of the statistic.
double h0_cdf_beta(double y, int K, int N);

/// Exact H0 CDF for K = 2: the Beta(N-1, 3/2) law.
double h0_cdf_exact_k2(double y, int N);

/// Exact H0 CDF for K = 3 via the series of incomplete-beta terms. Truncates
/// once a term's relative contribution drops below 1e-14; throws
/// ConvergenceError if 20000 terms are not enough (slow decay at small N).
double h0_cdf_exact_k3(double y, int N);

/// False-alarm probability at threshold zeta, and its inverse.
double pfa(double zeta, int K, int N);
double pfa(double zeta, const BetaParams& h0_params);
double threshold_for_pfa(double p, int K, int N);
double threshold_for_pfa(double p, const BetaParams& h0_params);

/// n-th moment of the statistic under H1 (Gamma-approximated trace). Exact
/// collapse to h0_moment when all eigenvalues of Sigma coincide. The Gamma
/// shape parameter depends on n and is recomputed per moment order.
double h1_moment(const CovarianceModel& model, int N, int n);
double h1_moment_from_eigs(std::span<const double> sigma_eigs, int N, int n);

BetaParams h1_beta_params(const CovarianceModel& model, int N);
BetaParams h1_beta_params_from_eigs(std::span<const double> sigma_eigs, int N);

/// Moment-matched Beta approximation to the H1 CDF.
double h1_cdf_beta(double y, const CovarianceModel& model, int N);

/// Exact H1 CDF for K = 2 with population eigenvalues sigma1 >= sigma2 > 0.
/// Falls back to the H0 law when the relative eigenvalue gap is below 1e-6
/// (the series constant loses all precision there and the limit law is the
/// null distribution). Series capped at 1e5 terms, relative tolerance 1e-13.
double h1_cdf_exact_k2(double y, double sigma1, double sigma2, int N);

/// Detection probability at threshold zeta: exact K = 2 path, Beta
/// approximation otherwise.
double pd(double zeta, const CovarianceModel& model, int N);

/// Analytic ROC: Pd over a strictly increasing grid of target Pfa values.
RocCurve roc_analytic(const CovarianceModel& model, int N, const std::vector<double>& pfa_grid);

}  // namespace stsense
