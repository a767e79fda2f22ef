#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stsense/matrix.hpp"
#include "stsense/roc.hpp"

namespace stsense {

/// Full description of one Monte-Carlo experiment. Channels, trials and all
/// derived outputs are a pure function of this record.
struct Scenario {
  int K = 2;
  int N = 1;
  double sigma2 = 1.0;
  std::vector<double> snrs_db;            // one entry per primary user
  double mu_db = 0.0;                     // worst-case noise uncertainty, dB
  long trials = 100000;
  std::uint64_t seed = 0;
  std::vector<DetectorKind> detectors;
  int threads = 0;                        // 0 = hardware concurrency

  void validate() const;
};

struct StatisticSample {
  DetectorKind detector = DetectorKind::ST;
  Hypothesis hypothesis = Hypothesis::H0;
  std::vector<double> values;             // indexed by trial
};

/// Worst-case effective noise powers (rho sigma2 under H0, sigma2 / rho under
/// H1) for uncertainty mu_db, rho = 10^(mu/10).
std::pair<double, double> effective_noise_powers(double sigma2, double mu_db);

/// The covariance model a scenario uses under the given hypothesis: white
/// noise at power rho*sigma2 for H0; channels drawn once from the scenario's
/// channel stream and noise power sigma2/rho for H1.
CovarianceModel scenario_model(const Scenario& scenario, Hypothesis hypothesis);

/// Runs every trial of one hypothesis: per trial draw X, form R = X X^H,
/// eigendecompose once, evaluate every requested detector. Trial t draws from
/// stream (seed, H0Trial|H1Trial, trial_offset + t), so results are
/// reproducible and independent of thread count. Detector failures surface
/// as sentinel values (ER: +inf), never abort the batch.
std::vector<StatisticSample> run_hypothesis(const Scenario& scenario, Hypothesis hypothesis);

/// Same, with a caller-supplied covariance model (fixed channel sets,
/// alternate channel protocols) and an explicit trial-stream offset used to
/// decorrelate repeated runs under one seed.
std::vector<StatisticSample> run_hypothesis(const Scenario& scenario, Hypothesis hypothesis,
                                            const CovarianceModel& model,
                                            std::uint64_t trial_offset);

/// Right-continuous empirical CDF of a sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> values);
  double operator()(double t) const;
  const std::vector<double>& sorted_values() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

/// Mean of |F - F_hat| over n uniformly spaced points in [lo, hi].
double avg_cdf_vertical_difference(const std::function<double(double)>& F,
                                   const std::function<double(double)>& F_hat, double lo,
                                   double hi, int n);

/// Empirical ROC from H0/H1 samples of one detector: 1000 equally spaced
/// thresholds spanning the pooled finite range; the fraction of values on the
/// detector's H1 side of each threshold gives (pfa, pd). Points are ordered
/// by nondecreasing pfa. ER's +inf sentinels sit above every threshold.
RocCurve empirical_roc(const StatisticSample& h0_sample, const StatisticSample& h1_sample,
                       DetectorKind detector);

/// How pd_vs_snr draws each channel set.
enum class ChannelMode {
  Random,      // i.i.d. Rayleigh directions, normalized per channel
  Orthogonal,  // same draws, Gram-Schmidt orthonormalized (requires P <= K)
};

struct PdVsSnrRow {
  double snr1_db = 0.0;
  double pd_st = 0.0;
  double pd_john = 0.0;
};

/// Detection probability against SNR_1 for the spherical-test and John's
/// detectors. Per-detector thresholds come from an empirical H0 quantile at
/// pfa_target (H0 uses max(trials, 200000) trials drawn once); each grid
/// point averages Pd over channel_draws independent channel sets, each
/// simulated with scenario.trials fresh H1 trials.
std::vector<PdVsSnrRow> pd_vs_snr(const Scenario& scenario, const std::vector<double>& snr1_grid_db,
                                  double snr_offset_db, double pfa_target, int channel_draws,
                                  ChannelMode mode = ChannelMode::Random);

}  // namespace stsense
