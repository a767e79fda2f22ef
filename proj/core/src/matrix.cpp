#include "stsense/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stsense {

ComplexMatrix sample_standard_complex_gaussian(int K, int N, RandomStream& rng) {
  if (K < 1 || N < 1) throw std::invalid_argument("sample_standard_complex_gaussian: K, N must be >= 1");
  ComplexMatrix G(K, N);
  // Column-major fill; the (seed, stream, position) -> entry mapping is fixed
  // by this traversal order.
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < K; ++i) {
      G(i, j) = rng.next_complex_gaussian();
    }
  }
  return G;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  const double scale = A.norm();
  if ((A - A.adjoint()).norm() > 1e-10 * std::max(scale, 1e-300)) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(A, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  }
  const auto& w = solver.eigenvalues();
  std::vector<double> eigs(w.size());
  for (int i = 0; i < w.size(); ++i) eigs[i] = w(w.size() - 1 - i);  // descending
  return eigs;
}

namespace {

CovarianceModel assemble(int K, double sigma2, std::vector<double> snrs, ComplexMatrix channels) {
  CovarianceModel model;
  model.K = K;
  model.sigma2 = sigma2;
  model.snrs = std::move(snrs);
  model.channels = std::move(channels);

  ComplexMatrix unit_part = ComplexMatrix::Identity(K, K);
  bool any_signal = false;
  for (std::size_t i = 0; i < model.snrs.size(); ++i) {
    if (model.snrs[i] == 0.0) continue;
    any_signal = true;
    const auto u = model.channels.col(static_cast<Eigen::Index>(i));
    unit_part.noalias() += model.snrs[i] * (u * u.adjoint());
  }
  model.white = !any_signal;

  if (model.white) {
    model.unit_part_sqrt = ComplexMatrix::Identity(K, K);
    model.sigma_eigs.assign(K, sigma2);
    return model;
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(unit_part);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("build_covariance: eigensolver failed");
  }
  const auto& w = solver.eigenvalues();
  const auto& V = solver.eigenvectors();
  Eigen::VectorXd sqrt_w(K);
  model.sigma_eigs.resize(K);
  for (int i = 0; i < K; ++i) {
    sqrt_w(i) = std::sqrt(std::max(w(i), 0.0));
    model.sigma_eigs[i] = sigma2 * w(K - 1 - i);  // descending
  }
  model.unit_part_sqrt = V * sqrt_w.asDiagonal() * V.adjoint();
  return model;
}

}  // namespace

CovarianceModel build_covariance(int K, double sigma2, const std::vector<double>& snrs_db,
                                 RandomStream& rng) {
  if (!(sigma2 > 0.0)) throw std::domain_error("build_covariance: sigma2 must be positive");
  if (K < 1) throw std::invalid_argument("build_covariance: K must be >= 1");
  const int P = static_cast<int>(snrs_db.size());
  ComplexMatrix channels(K, P);
  std::vector<double> snrs(P);
  for (int i = 0; i < P; ++i) {
    Eigen::VectorXcd h(K);
    for (int r = 0; r < K; ++r) h(r) = rng.next_complex_gaussian();
    channels.col(i) = h / h.norm();
    snrs[i] = std::isinf(snrs_db[i]) && snrs_db[i] < 0 ? 0.0 : std::pow(10.0, snrs_db[i] / 10.0);
  }
  return assemble(K, sigma2, std::move(snrs), std::move(channels));
}

CovarianceModel build_covariance_from_channels(double sigma2, const std::vector<double>& snrs_db,
                                               const ComplexMatrix& channels) {
  if (!(sigma2 > 0.0)) throw std::domain_error("build_covariance: sigma2 must be positive");
  if (channels.cols() != static_cast<Eigen::Index>(snrs_db.size())) {
    throw std::invalid_argument("build_covariance: one channel column per SNR required");
  }
  const int K = static_cast<int>(channels.rows());
  ComplexMatrix normalized = channels;
  std::vector<double> snrs(snrs_db.size());
  for (Eigen::Index i = 0; i < normalized.cols(); ++i) {
    const double norm = normalized.col(i).norm();
    if (norm == 0.0) throw std::invalid_argument("build_covariance: zero channel vector");
    normalized.col(i) /= norm;
    snrs[i] = std::isinf(snrs_db[i]) && snrs_db[i] < 0 ? 0.0 : std::pow(10.0, snrs_db[i] / 10.0);
  }
  return assemble(K, sigma2, std::move(snrs), std::move(normalized));
}

ComplexMatrix sample_covariance_matrix(const CovarianceModel& model, int N, RandomStream& rng) {
  if (N < 1) throw std::invalid_argument("sample_covariance_matrix: N must be >= 1");
  ComplexMatrix X = sample_standard_complex_gaussian(model.K, N, rng);
  if (!model.white) X = model.unit_part_sqrt * X;
  X *= std::sqrt(model.sigma2);
  ComplexMatrix R = ComplexMatrix::Zero(model.K, model.K);
  R.selfadjointView<Eigen::Lower>().rankUpdate(X);
  return R.selfadjointView<Eigen::Lower>();
}

}  // namespace stsense
