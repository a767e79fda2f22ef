#include "stsense/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace stsense {

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end) over an even partition of [0, n); fn must only touch
// disjoint state per index so the partition does not affect results.
void parallel_for(long n, int threads, const std::function<void(long, long)>& fn) {
  threads = std::min<long>(std::max(threads, 1), std::max<long>(n, 1));
  if (threads == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const long chunk = (n + threads - 1) / threads;
  for (int i = 0; i < threads; ++i) {
    const long begin = i * chunk;
    const long end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (auto& t : pool) t.join();
}

// Per-thread trial state; buffers are reused across trials.
struct TrialEngine {
  TrialEngine(const CovarianceModel& model, int N)
      : model_(model),
        N_(N),
        gaussian_(model.K, N),
        colored_(model.K, N),
        cov_(ComplexMatrix::Zero(model.K, model.K)),
        eigs_(model.K) {}

  // Eigenvalues (descending, clamped at 0) of sigma2 * (U G)(U G)^H for the
  // trial addressed by (seed, domain, index). The sigma2 factor multiplies
  // the unit-part eigenvalues, so scale-invariant statistics are bit-stable
  // across noise-power changes under a fixed seed.
  const std::vector<double>& eigenvalues(std::uint64_t seed, StreamDomain domain,
                                         std::uint64_t index) {
    RandomStream rng(seed, domain, index);
    for (int j = 0; j < N_; ++j) {
      for (int i = 0; i < model_.K; ++i) gaussian_(i, j) = rng.next_complex_gaussian();
    }
    const ComplexMatrix* data = &gaussian_;
    if (!model_.white) {
      colored_.noalias() = model_.unit_part_sqrt * gaussian_;
      data = &colored_;
    }
    cov_.setZero();
    cov_.selfadjointView<Eigen::Lower>().rankUpdate(*data);
    solver_.compute(cov_, Eigen::EigenvaluesOnly);
    const auto& w = solver_.eigenvalues();
    for (int i = 0; i < model_.K; ++i) {
      eigs_[i] = model_.sigma2 * std::max(w(model_.K - 1 - i), 0.0);
    }
    return eigs_;
  }

 private:
  const CovarianceModel& model_;
  int N_;
  ComplexMatrix gaussian_, colored_, cov_;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver_;
  std::vector<double> eigs_;
};

double guarded_statistic(DetectorKind kind, std::span<const double> eigs) {
  try {
    return evaluate_statistic(kind, eigs);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();  // per-trial sentinel
  }
}

}  // namespace

void Scenario::validate() const {
  if (K < 2) throw std::domain_error("scenario: K must be >= 2");
  if (N < 1) throw std::domain_error("scenario: N must be >= 1");
  if (!(sigma2 > 0.0)) throw std::domain_error("scenario: sigma2 must be positive");
  if (trials < 1) throw std::domain_error("scenario: trials must be >= 1");
  if (mu_db < 0.0) throw std::domain_error("scenario: mu_db must be >= 0");
}

std::pair<double, double> effective_noise_powers(double sigma2, double mu_db) {
  if (mu_db < 0.0) throw std::domain_error("effective_noise_powers: mu_db must be >= 0");
  const double rho = std::pow(10.0, mu_db / 10.0);
  return {rho * sigma2, sigma2 / rho};
}

CovarianceModel scenario_model(const Scenario& scenario, Hypothesis hypothesis) {
  scenario.validate();
  const auto [h0_power, h1_power] = effective_noise_powers(scenario.sigma2, scenario.mu_db);
  RandomStream channel_stream(scenario.seed, StreamDomain::Channel, 0);
  if (hypothesis == Hypothesis::H0) {
    return build_covariance(scenario.K, h0_power, {}, channel_stream);
  }
  return build_covariance(scenario.K, h1_power, scenario.snrs_db, channel_stream);
}

std::vector<StatisticSample> run_hypothesis(const Scenario& scenario, Hypothesis hypothesis) {
  return run_hypothesis(scenario, hypothesis, scenario_model(scenario, hypothesis), 0);
}

std::vector<StatisticSample> run_hypothesis(const Scenario& scenario, Hypothesis hypothesis,
                                            const CovarianceModel& model,
                                            std::uint64_t trial_offset) {
  scenario.validate();
  if (model.K != scenario.K) throw std::invalid_argument("run_hypothesis: model/scenario K mismatch");

  std::vector<StatisticSample> samples(scenario.detectors.size());
  for (std::size_t d = 0; d < samples.size(); ++d) {
    samples[d].detector = scenario.detectors[d];
    samples[d].hypothesis = hypothesis;
    samples[d].values.resize(static_cast<std::size_t>(scenario.trials));
  }

  const StreamDomain domain =
      hypothesis == Hypothesis::H0 ? StreamDomain::H0Trial : StreamDomain::H1Trial;
  parallel_for(scenario.trials, resolve_threads(scenario.threads), [&](long begin, long end) {
    TrialEngine engine(model, scenario.N);
    for (long t = begin; t < end; ++t) {
      const auto& eigs = engine.eigenvalues(scenario.seed, domain, trial_offset + t);
      for (std::size_t d = 0; d < samples.size(); ++d) {
        samples[d].values[static_cast<std::size_t>(t)] =
            guarded_statistic(samples[d].detector, eigs);
      }
    }
  });
  return samples;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw std::invalid_argument("EmpiricalCdf: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double t) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double avg_cdf_vertical_difference(const std::function<double(double)>& F,
                                   const std::function<double(double)>& F_hat, double lo,
                                   double hi, int n) {
  if (n < 2) throw std::invalid_argument("avg_cdf_vertical_difference: needs n >= 2");
  if (!(hi > lo)) throw std::invalid_argument("avg_cdf_vertical_difference: needs hi > lo");
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    acc += std::fabs(F(x) - F_hat(x));
  }
  return acc / static_cast<double>(n);
}

RocCurve empirical_roc(const StatisticSample& h0_sample, const StatisticSample& h1_sample,
                       DetectorKind detector) {
  if (h0_sample.detector != detector || h1_sample.detector != detector) {
    throw std::invalid_argument("empirical_roc: sample/detector mismatch");
  }
  std::vector<double> h0v, h1v;
  h0v.reserve(h0_sample.values.size());
  h1v.reserve(h1_sample.values.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const double v : h0_sample.values) {
    if (std::isnan(v)) continue;
    h0v.push_back(v);
    if (std::isfinite(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  }
  for (const double v : h1_sample.values) {
    if (std::isnan(v)) continue;
    h1v.push_back(v);
    if (std::isfinite(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  }
  if (h0v.empty() || h1v.empty() || !(hi >= lo)) {
    throw std::invalid_argument("empirical_roc: no finite statistic values");
  }
  std::sort(h0v.begin(), h0v.end());
  std::sort(h1v.begin(), h1v.end());

  constexpr int kThresholds = 1000;
  const double n0 = static_cast<double>(h0v.size());
  const double n1 = static_cast<double>(h1v.size());
  const H1Direction dir = h1_direction(detector);

  RocCurve curve;
  curve.detector = detector;
  curve.source = RocSource::Empirical;
  curve.points.reserve(kThresholds);
  for (int i = 0; i < kThresholds; ++i) {
    // For the small direction thresholds ascend with pfa; for the large
    // direction we sweep them descending so pfa still ascends.
    const int step = dir == H1Direction::Small ? i : kThresholds - 1 - i;
    const double t = lo + (hi - lo) * static_cast<double>(step) / (kThresholds - 1.0);
    double pfa, pd;
    if (dir == H1Direction::Small) {
      pfa = (std::lower_bound(h0v.begin(), h0v.end(), t) - h0v.begin()) / n0;
      pd = (std::lower_bound(h1v.begin(), h1v.end(), t) - h1v.begin()) / n1;
    } else {
      pfa = (h0v.end() - std::upper_bound(h0v.begin(), h0v.end(), t)) / n0;
      pd = (h1v.end() - std::upper_bound(h1v.begin(), h1v.end(), t)) / n1;
    }
    curve.points.push_back({pfa, pd});
  }
  return curve;
}

std::vector<PdVsSnrRow> pd_vs_snr(const Scenario& scenario, const std::vector<double>& snr1_grid_db,
                                  double snr_offset_db, double pfa_target, int channel_draws,
                                  ChannelMode mode) {
  scenario.validate();
  if (!(pfa_target > 0.0) || !(pfa_target < 1.0)) {
    throw std::domain_error("pd_vs_snr: pfa_target must lie in (0,1)");
  }
  if (channel_draws < 1) throw std::domain_error("pd_vs_snr: channel_draws must be >= 1");
  constexpr int kUsers = 2;  // Pd-vs-SNR table is the two-user experiment
  if (mode == ChannelMode::Orthogonal && kUsers > scenario.K) {
    throw std::invalid_argument("pd_vs_snr: orthogonal channels need P <= K");
  }

  const auto [h0_power, h1_power] = effective_noise_powers(scenario.sigma2, scenario.mu_db);

  // One H0 run sets both thresholds; the sample is larger than a per-draw H1
  // run so quantile noise does not bias every grid point the same way.
  Scenario h0_scenario = scenario;
  h0_scenario.trials = std::max(scenario.trials, 200000L);
  h0_scenario.detectors = {DetectorKind::ST, DetectorKind::JOHN};
  h0_scenario.snrs_db.clear();
  auto h0_samples = run_hypothesis(h0_scenario, Hypothesis::H0);
  std::vector<double> st0 = std::move(h0_samples[0].values);
  std::vector<double> j0 = std::move(h0_samples[1].values);
  std::sort(st0.begin(), st0.end());
  std::sort(j0.begin(), j0.end());
  const auto quantile = [](const std::vector<double>& sorted, double q) {
    const auto idx = static_cast<std::size_t>(
        std::clamp<double>(std::floor(q * static_cast<double>(sorted.size())), 0.0,
                           static_cast<double>(sorted.size() - 1)));
    return sorted[idx];
  };
  const double zeta_st = quantile(st0, pfa_target);         // H1 side: small
  const double zeta_john = quantile(j0, 1.0 - pfa_target);  // H1 side: large

  // Channel sets are drawn once per draw index and shared across the SNR
  // grid (common random numbers steady the trend); trial streams never
  // overlap across (grid point, draw).
  std::vector<ComplexMatrix> channel_sets(channel_draws);
  for (int d = 0; d < channel_draws; ++d) {
    RandomStream ch(scenario.seed, StreamDomain::Channel, static_cast<std::uint64_t>(d));
    ComplexMatrix h(scenario.K, kUsers);
    for (int c = 0; c < kUsers; ++c) {
      for (int r = 0; r < scenario.K; ++r) h(r, c) = ch.next_complex_gaussian();
      h.col(c) /= h.col(c).norm();
    }
    if (mode == ChannelMode::Orthogonal) {
      for (int c = 1; c < kUsers; ++c) {
        for (int prev = 0; prev < c; ++prev) {
          h.col(c) -= h.col(prev).dot(h.col(c)) * h.col(prev);
        }
        const double norm = h.col(c).norm();
        if (norm < 1e-12) throw std::runtime_error("pd_vs_snr: degenerate channel draw");
        h.col(c) /= norm;
      }
    }
    channel_sets[d] = std::move(h);
  }

  Scenario h1_scenario = scenario;
  h1_scenario.detectors = {DetectorKind::ST, DetectorKind::JOHN};

  std::vector<PdVsSnrRow> rows;
  rows.reserve(snr1_grid_db.size());
  for (std::size_t g = 0; g < snr1_grid_db.size(); ++g) {
    const std::vector<double> snrs_db = {snr1_grid_db[g], snr1_grid_db[g] + snr_offset_db};
    double pd_st_acc = 0.0, pd_john_acc = 0.0;
    for (int d = 0; d < channel_draws; ++d) {
      const CovarianceModel model =
          build_covariance_from_channels(h1_power, snrs_db, channel_sets[d]);
      const std::uint64_t offset =
          (static_cast<std::uint64_t>(g) * channel_draws + d) * static_cast<std::uint64_t>(scenario.trials);
      const auto h1_samples = run_hypothesis(h1_scenario, Hypothesis::H1, model, offset);
      long st_hits = 0, john_hits = 0;
      for (const double v : h1_samples[0].values) st_hits += v < zeta_st;
      for (const double v : h1_samples[1].values) john_hits += v > zeta_john;
      pd_st_acc += static_cast<double>(st_hits) / static_cast<double>(scenario.trials);
      pd_john_acc += static_cast<double>(john_hits) / static_cast<double>(scenario.trials);
    }
    rows.push_back({snr1_grid_db[g], pd_st_acc / channel_draws, pd_john_acc / channel_draws});
  }
  return rows;
}

}  // namespace stsense
