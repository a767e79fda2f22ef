#include "stsense/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stsense/special_functions.hpp"

namespace stsense {

namespace {

double clamp_unit(double y) { return std::min(std::max(y, 0.0), 1.0); }

void require_kn(int K, int N, const char* who) {
  if (K < 1) throw std::domain_error(std::string(who) + ": K must be >= 1");
  if (N < K) throw std::domain_error(std::string(who) + ": requires N >= K");
}

}  // namespace

double h0_moment(int K, int N, int n) {
  require_kn(K, N, "h0_moment");
  if (n < 1) throw std::domain_error("h0_moment: moment order must be >= 1");
  if (K == 1) return 1.0;
  const double Kd = K;
  const double ln = log_gamma(Kd * N) - multivariate_log_gamma(K, N) +
                    Kd * n * std::log(Kd) + multivariate_log_gamma(K, N + n) -
                    log_gamma(Kd * (N + n));
  return std::exp(ln);
}

MomentSequence h0_moments(int K, int N, int max_n) {
  MomentSequence seq;
  seq.hypothesis = Hypothesis::H0;
  for (int n = 1; n <= max_n; ++n) seq.values.push_back(h0_moment(K, N, n));
  return seq;
}

BetaParams beta_match(double M1, double M2, Hypothesis hypothesis) {
  if (!(M1 > 0.0) || !(M1 < 1.0)) throw std::domain_error("beta_match: M1 must lie in (0,1)");
  if (!(M2 < M1)) throw std::domain_error("beta_match: requires M2 < M1");
  const double var = M2 - M1 * M1;
  if (!(var > 0.0)) throw std::domain_error("beta_match: nonpositive variance");
  const double scale = (M1 - M2) / var;
  return {M1 * scale, (1.0 - M1) * scale, hypothesis};
}

BetaParams h0_beta_params(int K, int N) {
  require_kn(K, N, "h0_beta_params");
  if (K < 2) throw std::domain_error("h0_beta_params: statistic is degenerate for K = 1");
  // Same quantities as beta_match over h0_moment, rearranged into products of
  // near-unit ratios: M2/M1^2 - 1 and 1 - M2/M1 vanish like 1/N and the
  // direct moment differences lose ~7 digits at N in the hundreds.
  const double Kd = K;
  double ln_m1 = 0.0;    // ln M1
  double ln_ratio = 0.0; // ln(M2/M1)
  double ln_r = 0.0;     // ln(M2/M1^2)
  for (int j = 0; j < K; ++j) {
    const double jd = j;
    ln_m1 += std::log1p(-jd * (Kd + 1.0) / (Kd * N + jd));
    ln_ratio += std::log1p(-jd * (Kd + 1.0) / (Kd * N + Kd + jd));
    ln_r += std::log1p(jd * (Kd + 1.0) / ((Kd * N + Kd + jd) * (N - jd)));
  }
  const double one_minus_ratio = -std::expm1(ln_ratio); // 1 - M2/M1
  const double r_minus_one = std::expm1(ln_r);          // M2/M1^2 - 1
  const double alpha = one_minus_ratio / r_minus_one;
  const double m1 = std::exp(ln_m1);
  const double beta = -std::expm1(ln_m1) * alpha / m1;  // (1-M1)/M1 * alpha
  return {alpha, beta, Hypothesis::H0};
}

BetaParams round_beta_params(const BetaParams& params) {
  return {std::max(1.0, std::round(params.alpha)), std::max(1.0, std::round(params.beta)),
          params.hypothesis};
}

double h0_cdf_beta(double y, int K, int N) {
  const BetaParams p = h0_beta_params(K, N);
  return regularized_incomplete_beta(clamp_unit(y), p.alpha, p.beta);
}

double h0_cdf_exact_k2(double y, int N) {
  if (N < 2) throw std::domain_error("h0_cdf_exact_k2: requires N >= 2");
  // The prefactor 2 Gamma(N+1/2) / (sqrt(pi) Gamma(N-1)) is exactly
  // 1/B(N-1, 3/2), so this is the regularized incomplete beta.
  return regularized_incomplete_beta(clamp_unit(y), N - 1.0, 1.5);
}

double h0_cdf_exact_k3(double y, int N) {
  if (N < 3) throw std::domain_error("h0_cdf_exact_k3: requires N >= 3");
  y = clamp_unit(y);
  if (y <= 0.0) return 0.0;
  constexpr int kMaxTerms = 20000;
  constexpr double kRelTol = 1e-14;
  const double a = N - 1.0;
  const double ln_pre = log_gamma(N + 1.0 / 3.0) + log_gamma(N + 2.0 / 3.0) - std::log(6.0) -
                        log_gamma(N - 1.0) - log_gamma(N - 2.0);
  // Series of positive terms pre * c_k * B_y(N-1, k+4), with the scaled
  // incomplete beta advanced by B_y(a,b+1) = (b B_y(a,b) + y^a (1-y)^b)/(a+b).
  const double i0 = regularized_incomplete_beta(y, a, 4.0);
  double scaled_b = i0 > 0.0 ? std::exp(ln_pre + std::log(i0) + log_beta(a, 4.0)) : 0.0;
  double scaled_u = y < 1.0 ? std::exp(ln_pre + a * std::log(y) + 4.0 * std::log1p(-y)) : 0.0;
  double coeff = 1.0;
  double sum = 0.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double term = coeff * scaled_b;
    sum += term;
    if (k > 2 && term <= kRelTol * sum) return clamp_unit(sum);
    const double b = k + 4.0;
    scaled_b = (b * scaled_b + scaled_u) / (a + b);
    scaled_u *= 1.0 - y;
    coeff *= (8.0 / 3.0 + k) * (7.0 / 3.0 + k) / ((k + 1.0) * (4.0 + k));
  }
  throw ConvergenceError("h0_cdf_exact_k3: series cap hit before tolerance (N=" +
                         std::to_string(N) + ", y=" + std::to_string(y) + ")");
}

double pfa(double zeta, int K, int N) { return h0_cdf_beta(zeta, K, N); }

double pfa(double zeta, const BetaParams& h0_params) {
  return regularized_incomplete_beta(clamp_unit(zeta), h0_params.alpha, h0_params.beta);
}

double threshold_for_pfa(double p, int K, int N) {
  return threshold_for_pfa(p, h0_beta_params(K, N));
}

double threshold_for_pfa(double p, const BetaParams& h0_params) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("pfa must lie in (0,1)");
  return inverse_regularized_incomplete_beta(p, h0_params.alpha, h0_params.beta);
}

double h1_moment_from_eigs(std::span<const double> sigma_eigs, int N, int n) {
  const int K = static_cast<int>(sigma_eigs.size());
  require_kn(K, N, "h1_moment");
  if (n < 1) throw std::domain_error("h1_moment: moment order must be >= 1");
  double s1 = 0.0, s2 = 0.0, log_det = 0.0;
  for (const double s : sigma_eigs) {
    if (!(s > 0.0)) throw std::domain_error("h1_moment: eigenvalues must be positive");
    s1 += s;
    s2 += s * s;
    log_det += std::log(s);
  }
  const double Kd = K;
  const double a = (N + n) * s1 * s1 / s2;  // depends on the moment order
  const double b = s2 / s1;
  if (!(a - Kd * n > 0.0)) {
    throw std::domain_error("h1_moment: Gamma shape too small (a - Kn <= 0)");
  }
  const double ln = Kd * n * (std::log(Kd) - std::log(b)) + log_gamma(a - Kd * n) +
                    multivariate_log_gamma(K, N + n) + n * log_det -
                    multivariate_log_gamma(K, N) - log_gamma(a);
  return std::exp(ln);
}

double h1_moment(const CovarianceModel& model, int N, int n) {
  return h1_moment_from_eigs(model.sigma_eigs, N, n);
}

BetaParams h1_beta_params_from_eigs(std::span<const double> sigma_eigs, int N) {
  return beta_match(h1_moment_from_eigs(sigma_eigs, N, 1), h1_moment_from_eigs(sigma_eigs, N, 2),
                    Hypothesis::H1);
}

BetaParams h1_beta_params(const CovarianceModel& model, int N) {
  return h1_beta_params_from_eigs(model.sigma_eigs, N);
}

double h1_cdf_beta(double y, const CovarianceModel& model, int N) {
  const BetaParams p = h1_beta_params(model, N);
  return regularized_incomplete_beta(clamp_unit(y), p.alpha, p.beta);
}

double h1_cdf_exact_k2(double y, double sigma1, double sigma2, int N) {
  if (N < 2) throw std::domain_error("h1_cdf_exact_k2: requires N >= 2");
  if (!(sigma2 > 0.0) || sigma1 < sigma2) {
    throw std::domain_error("h1_cdf_exact_k2: requires sigma1 >= sigma2 > 0");
  }
  const double delta = (sigma1 - sigma2) / (sigma1 + sigma2);
  if (delta <= 1e-6) {
    // Near-spherical Sigma: the series constant degenerates while the law
    // tends to the null distribution.
    return h0_cdf_exact_k2(y, N);
  }
  y = clamp_unit(y);
  if (y >= 1.0) return 1.0;
  constexpr int kMaxTerms = 100000;
  constexpr double kRelTol = 1e-13;
  const double x = 1.0 - y;
  // G(y) = 1 - sum_{j>=0} |D| coeff_j delta^{2j} B_x(j+3/2, N-1) with
  // coeff_j = (2N-1)_{2j+1} / (2j+1)!; every term is positive.
  const double ln_d = std::log(4.0) + N * std::log(sigma1 * sigma2) -
                      2.0 * N * std::log(sigma1 + sigma2) - log_beta(N, N - 1.0);
  const double ln_delta2 = 2.0 * std::log(delta);
  double ln_coeff = std::log(2.0 * N - 1.0);
  double sum = 0.0;
  for (int j = 0; j < kMaxTerms; ++j) {
    const double ib = regularized_incomplete_beta(x, j + 1.5, N - 1.0);
    double term = 0.0;
    if (ib > 0.0) {
      term = std::exp(ln_d + ln_coeff + j * ln_delta2 + std::log(ib) + log_beta(j + 1.5, N - 1.0));
    }
    sum += term;
    if (j > 3 && term <= kRelTol * sum) return clamp_unit(1.0 - sum);
    ln_coeff += std::log(2.0 * N + 2.0 * j) + std::log(2.0 * N + 2.0 * j + 1.0) -
                std::log(2.0 * j + 2.0) - std::log(2.0 * j + 3.0);
  }
  throw ConvergenceError("h1_cdf_exact_k2: series cap hit before tolerance (sigma1=" +
                         std::to_string(sigma1) + ", sigma2=" + std::to_string(sigma2) + ")");
}

double pd(double zeta, const CovarianceModel& model, int N) {
  if (model.K == 2) {
    return h1_cdf_exact_k2(zeta, model.sigma_eigs[0], model.sigma_eigs[1], N);
  }
  return h1_cdf_beta(zeta, model, N);
}

RocCurve roc_analytic(const CovarianceModel& model, int N, const std::vector<double>& pfa_grid) {
  for (std::size_t i = 0; i < pfa_grid.size(); ++i) {
    if (!(pfa_grid[i] > 0.0) || !(pfa_grid[i] < 1.0)) {
      throw std::domain_error("roc_analytic: pfa grid values must lie in (0,1)");
    }
    if (i > 0 && !(pfa_grid[i] > pfa_grid[i - 1])) {
      throw std::domain_error("roc_analytic: pfa grid must be strictly increasing");
    }
  }
  const BetaParams h0 = h0_beta_params(model.K, N);
  RocCurve curve;
  curve.detector = DetectorKind::ST;
  curve.source = RocSource::Analytic;
  curve.points.reserve(pfa_grid.size());
  for (const double p : pfa_grid) {
    const double zeta = threshold_for_pfa(p, h0);
    curve.points.push_back({p, pd(zeta, model, N)});
  }
  return curve;
}

}  // namespace stsense
