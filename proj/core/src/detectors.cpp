#include "stsense/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stsense {

H1Direction h1_direction(DetectorKind kind) {
  return kind == DetectorKind::ST ? H1Direction::Small : H1Direction::Large;
}

const char* detector_name(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::ST: return "ST";
    case DetectorKind::ER: return "ER";
    case DetectorKind::JOHN: return "JOHN";
    case DetectorKind::LE: return "LE";
    case DetectorKind::SLE: return "SLE";
    case DetectorKind::ED: return "ED";
  }
  return "?";
}

DetectorKind parse_detector(const std::string& name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "ST") return DetectorKind::ST;
  if (up == "ER") return DetectorKind::ER;
  if (up == "JOHN" || up == "J") return DetectorKind::JOHN;
  if (up == "LE") return DetectorKind::LE;
  if (up == "SLE") return DetectorKind::SLE;
  if (up == "ED") return DetectorKind::ED;
  throw std::invalid_argument("unknown detector: " + name);
}

double st_statistic(std::span<const double> eigs) {
  const std::size_t K = eigs.size();
  if (K < 2) throw std::domain_error("st_statistic: needs K >= 2 eigenvalues");
  double sum = 0.0, max_eig = 0.0;
  for (const double v : eigs) {
    sum += v;
    max_eig = std::max(max_eig, v);
  }
  if (!(sum > 0.0)) throw std::domain_error("st_statistic: trace must be positive");
  double log_prod = 0.0;
  for (const double v : eigs) {
    if (v < 1e-300 * max_eig) return 0.0;
    log_prod += std::log(v);
  }
  const double t = std::exp(log_prod - static_cast<double>(K) * std::log(sum / static_cast<double>(K)));
  return std::min(t, 1.0);
}

double er_statistic(std::span<const double> eigs) {
  const auto [mn, mx] = std::minmax_element(eigs.begin(), eigs.end());
  if (*mn <= 1e-300) return std::numeric_limits<double>::infinity();
  return *mx / *mn;
}

double john_statistic(std::span<const double> eigs) {
  double sum = 0.0, sum_sq = 0.0;
  for (const double v : eigs) {
    sum += v;
    sum_sq += v * v;
  }
  if (!(sum > 0.0)) throw std::domain_error("john_statistic: trace must be positive");
  return sum_sq / (sum * sum);
}

double le_statistic(std::span<const double> eigs) {
  return *std::max_element(eigs.begin(), eigs.end());
}

double sle_statistic(std::span<const double> eigs) {
  double sum = 0.0;
  for (const double v : eigs) sum += v;
  if (!(sum > 0.0)) throw std::domain_error("sle_statistic: trace must be positive");
  return *std::max_element(eigs.begin(), eigs.end()) / sum;
}

double ed_statistic(std::span<const double> eigs) {
  double sum = 0.0;
  for (const double v : eigs) sum += v;
  return sum;
}

double evaluate_statistic(DetectorKind kind, std::span<const double> eigs) {
  switch (kind) {
    case DetectorKind::ST: return st_statistic(eigs);
    case DetectorKind::ER: return er_statistic(eigs);
    case DetectorKind::JOHN: return john_statistic(eigs);
    case DetectorKind::LE: return le_statistic(eigs);
    case DetectorKind::SLE: return sle_statistic(eigs);
    case DetectorKind::ED: return ed_statistic(eigs);
  }
  throw std::logic_error("evaluate_statistic: unreachable");
}

}  // namespace stsense
