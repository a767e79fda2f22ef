#pragma once

#include <span>
#include <string>

namespace stsense {

enum class DetectorKind { ST, ER, JOHN, LE, SLE, ED };

/// Side of the threshold on which H1 is declared. The spherical test rejects
/// the null for small statistic values; every other detector for large ones.
enum class H1Direction { Small, Large };

H1Direction h1_direction(DetectorKind kind);
const char* detector_name(DetectorKind kind);
DetectorKind parse_detector(const std::string& name);

/// Spherical-test statistic: product of eigenvalues over the K-th power of
/// their mean, in [0,1], equal to 1 iff all eigenvalues coincide. Evaluated
/// in the log domain; eigenvalues below 1e-300 * max count as exact zeros.
double st_statistic(std::span<const double> eigs);

/// Extreme-eigenvalue ratio, >= 1; +infinity when the smallest eigenvalue is
/// numerically zero (rank-deficient sample covariance, e.g. N < K).
double er_statistic(std::span<const double> eigs);

/// Sum of squared eigenvalues over squared trace, in [1/K, 1].
double john_statistic(std::span<const double> eigs);

/// Largest eigenvalue.
double le_statistic(std::span<const double> eigs);

/// Largest eigenvalue over trace, in [1/K, 1].
double sle_statistic(std::span<const double> eigs);

/// Trace (equals the squared Frobenius norm of the data matrix).
double ed_statistic(std::span<const double> eigs);

double evaluate_statistic(DetectorKind kind, std::span<const double> eigs);

}  // namespace stsense
