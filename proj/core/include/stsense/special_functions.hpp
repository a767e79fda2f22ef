#pragma once

#include <stdexcept>

#include "stsense/signed_log.hpp"

namespace stsense {

/// Thrown when a truncated series or iteration hits its cap before reaching
/// the requested tolerance. Maps to exit code 3 at the CLI boundary.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln B(a,b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b).
double log_beta(double a, double b);

/// ln Gamma_K(N) = K(K-1)/2 * ln(pi) + sum_{j=0}^{K-1} ln Gamma(N - j).
/// Requires N > K - 1 so every factor is in the gamma domain.
double multivariate_log_gamma(int K, double N);

/// Regularized incomplete beta I_y(a,b); y is clamped to [0,1].
double regularized_incomplete_beta(double y, double a, double b);

/// Inverse of I_y(a,b) in y: bracketed, safeguarded Newton iteration on the
/// forward function. Endpoints map exactly (0 -> 0, 1 -> 1).
double inverse_regularized_incomplete_beta(double p, double a, double b);

/// Pochhammer symbol (x)_n = Gamma(x+n)/Gamma(x) by analytic continuation:
///   n >= 1: x(x+1)...(x+n-1)
///   n == 0: 1
///   n <= -1: 1/((x-1)(x-2)...(x+n)), a pole (domain error) if a factor is 0.
/// Sign is tracked exactly; a zero factor with n >= 1 yields sign == 0.
SignedLogValue pochhammer_signed(double x, long n);

}  // namespace stsense
