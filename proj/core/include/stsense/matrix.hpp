#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stsense/rng.hpp"

namespace stsense {

/// Dense complex matrix; dimensions carried by the Eigen type.
using ComplexMatrix = Eigen::MatrixXcd;

/// K x N matrix with i.i.d. circularly-symmetric complex Gaussian entries of
/// unit total variance (real/imaginary parts N(0, 1/2) each).
ComplexMatrix sample_standard_complex_gaussian(int K, int N, RandomStream& rng);

/// Eigenvalues of a Hermitian matrix, sorted descending. Throws if the input
/// is not Hermitian within 1e-10 relative asymmetry.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& A);

/// Population covariance Sigma = sigma2 * (I + sum_i snr_i u_i u_i^H) with
/// unit-norm channel vectors u_i. `unit_part_sqrt` is the Hermitian square
/// root of Sigma / sigma2, so sqrt(Sigma) = sqrt(sigma2) * unit_part_sqrt and
/// samples scale exactly with sqrt(sigma2). Under H0 (no signals) the unit
/// part is the identity.
struct CovarianceModel {
  int K = 0;
  double sigma2 = 1.0;
  std::vector<double> snrs;       // linear SNR_i >= 0
  ComplexMatrix channels;         // K x P, unit-norm columns
  std::vector<double> sigma_eigs; // eigenvalues of Sigma, descending
  ComplexMatrix unit_part_sqrt;   // K x K Hermitian, sqrt(I + sum snr_i u_i u_i^H)
  bool white = true;              // true iff no signal terms (unit part == I)
};

/// Draws P = snrs_db.size() channels from `rng`, normalizes each, and
/// assembles the covariance model. A dB value of -inf contributes zero
/// linear SNR. P may exceed K.
CovarianceModel build_covariance(int K, double sigma2, const std::vector<double>& snrs_db,
                                 RandomStream& rng);

/// Same assembly from caller-provided channel columns (K x P); each column
/// is normalized to unit norm. Used for fixed or orthogonalized channel sets.
CovarianceModel build_covariance_from_channels(double sigma2, const std::vector<double>& snrs_db,
                                               const ComplexMatrix& channels);

/// One draw of the sample covariance R = X X^H with X = sqrt(Sigma) G and G a
/// fresh K x N standard complex Gaussian matrix. R is Hermitian PSD.
ComplexMatrix sample_covariance_matrix(const CovarianceModel& model, int N, RandomStream& rng);

}  // namespace stsense
