// Command-line surface for the spherical-test sensing library: analytic
// thresholds and moments, Monte-Carlo ROC and Pd-vs-SNR experiments, and the
// acceptance-suite runner. Exit codes: 0 success, 1 validation failure,
// 2 usage/parameter error, 3 numerical-convergence failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stsense/acceptance.hpp"
#include "stsense/analytic.hpp"
#include "stsense/csv.hpp"
#include "stsense/experiment_config.hpp"
#include "stsense/simulate.hpp"
#include "stsense/special_functions.hpp"

namespace {

using namespace stsense;

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;

void print_12sig(double v) { std::printf("%.12g\n", v); }

std::vector<DetectorKind> parse_detectors(const std::vector<std::string>& names) {
  std::vector<DetectorKind> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(parse_detector(n));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

struct ScenarioFlags {
  int k = -1;
  int n = -1;
  double sigma2 = -1.0;
  std::vector<double> snrs_db;
  double mu_db = -1.0;
  long trials = -1;
  std::int64_t seed = -1;
  std::vector<std::string> detectors;
  int threads = -1;
  std::string config_path;
  std::string out;
  std::string format;

  void add_to(CLI::App* cmd, bool with_snrs = true) {
    cmd->add_option("--config", config_path, "JSON experiment config; flags override its fields");
    cmd->add_option("--k", k, "number of sensors K");
    cmd->add_option("--n", n, "samples per sensor N");
    cmd->add_option("--sigma2", sigma2, "nominal noise power (default 1)");
    if (with_snrs) {
      cmd->add_option("--snr-db", snrs_db, "per-user SNR in dB (repeatable)")->delimiter(',');
    }
    cmd->add_option("--mu-db", mu_db, "noise-uncertainty level in dB");
    cmd->add_option("--trials", trials, "Monte-Carlo trials");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--detectors", detectors, "detector list (ST,ER,JOHN,LE,SLE,ED)")->delimiter(',');
    cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", out, "output path (default stdout)");
    cmd->add_option("--format", format, "output format: csv or json");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig config;
    if (!config_path.empty()) config = load_experiment_config(config_path);
    if (k > 0) config.scenario.K = k;
    if (n > 0) config.scenario.N = n;
    if (sigma2 > 0) config.scenario.sigma2 = sigma2;
    if (!snrs_db.empty()) config.scenario.snrs_db = snrs_db;
    if (mu_db >= 0) config.scenario.mu_db = mu_db;
    if (trials > 0) config.scenario.trials = trials;
    if (seed >= 0) config.scenario.seed = static_cast<std::uint64_t>(seed);
    if (!detectors.empty()) config.scenario.detectors = parse_detectors(detectors);
    if (threads >= 0) config.scenario.threads = threads;
    if (!out.empty()) config.out = out;
    if (!format.empty()) config.format = format;
    config.validate();
    return config;
  }
};

int cmd_threshold(int k, int n, double p, bool round_params) {
  BetaParams params = h0_beta_params(k, n);
  if (round_params) params = round_beta_params(params);
  print_12sig(threshold_for_pfa(p, params));
  return 0;
}

int cmd_pfa(int k, int n, double zeta, bool round_params) {
  BetaParams params = h0_beta_params(k, n);
  if (round_params) params = round_beta_params(params);
  print_12sig(pfa(zeta, params));
  return 0;
}

int cmd_moments(const ScenarioFlags& flags, bool round_params) {
  const int K = flags.k, N = flags.n;
  if (K < 2 || N < 1) throw std::domain_error("moments: --k >= 2 and --n >= 1 required");
  BetaParams params;
  if (flags.snrs_db.empty()) {
    for (int n = 1; n <= 4; ++n) std::printf("M%d = %.10g\n", n, h0_moment(K, N, n));
    params = h0_beta_params(K, N);
  } else {
    RandomStream channels(flags.seed >= 0 ? static_cast<std::uint64_t>(flags.seed) : 0,
                          StreamDomain::Channel, 0);
    const double sigma2 = flags.sigma2 > 0 ? flags.sigma2 : 1.0;
    const CovarianceModel model = build_covariance(K, sigma2, flags.snrs_db, channels);
    for (int n = 1; n <= 4; ++n) std::printf("N%d = %.10g\n", n, h1_moment(model, N, n));
    params = h1_beta_params(model, N);
  }
  if (round_params) params = round_beta_params(params);
  std::printf("alpha = %.10g\n", params.alpha);
  std::printf("beta = %.10g\n", params.beta);
  return 0;
}

int cmd_roc(const ScenarioFlags& flags) {
  const ExperimentConfig config = flags.resolve();
  const Scenario& scenario = config.scenario;
  if (scenario.detectors.empty()) {
    throw std::invalid_argument("roc: detector list must not be empty");
  }
  std::vector<RocCurve> curves;
  const auto h0 = run_hypothesis(scenario, Hypothesis::H0);
  const auto h1 = run_hypothesis(scenario, Hypothesis::H1);
  for (std::size_t d = 0; d < scenario.detectors.size(); ++d) {
    curves.push_back(empirical_roc(h0[d], h1[d], scenario.detectors[d]));
  }
  if (scenario.N >= scenario.K) {
    const CovarianceModel model = scenario_model(scenario, Hypothesis::H1);
    curves.push_back(roc_analytic(model, scenario.N, config.pfa_grid.expand()));
  } else {
    std::cerr << "note: N < K, analytic ST rows omitted\n";
  }
  std::ostringstream text;
  if (config.format == "csv") {
    write_roc_csv(text, curves);
  } else {
    text << roc_json(curves);
  }
  write_text(config.out, text.str());
  return 0;
}

int cmd_pd(const ScenarioFlags& flags) {
  const ExperimentConfig config = flags.resolve();
  if (!config.pd_table) {
    throw std::invalid_argument("pd: config must carry a pd_table block (snr grid)");
  }
  const PdTableSpec& spec = *config.pd_table;
  if (spec.snr1_grid_db.empty()) throw std::invalid_argument("pd: snr1_grid_db must not be empty");
  const auto rows = pd_vs_snr(config.scenario, spec.snr1_grid_db, spec.snr_offset_db,
                              spec.pfa_target, spec.channel_draws, spec.channel_mode);
  std::ostringstream text;
  if (config.format == "csv") {
    write_pd_table_csv(text, rows);
  } else {
    text << pd_table_json(rows);
  }
  write_text(config.out, text.str());
  return 0;
}

int cmd_validate(const std::vector<int>& ids, int threads) {
  const auto results = run_acceptance(ids, &std::cout, threads);
  if (results.empty()) {
    std::cerr << "validate: no matching criteria\n";
    return kExitUsage;
  }
  return all_passed(results) ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical-test spectrum sensing: analytics, Monte-Carlo, validation"};
  app.require_subcommand(1);

  // threshold
  auto* threshold = app.add_subcommand("threshold", "detection threshold for a target Pfa");
  int th_k = 0, th_n = 0;
  double th_pfa = -1.0;
  bool th_round = false;
  threshold->add_option("--k", th_k, "number of sensors K")->required();
  threshold->add_option("--n", th_n, "samples per sensor N")->required();
  threshold->add_option("--pfa", th_pfa, "target false-alarm probability")->required();
  threshold->add_flag("--round-beta", th_round, "round Beta parameters to integers");

  // pfa
  auto* pfa_cmd = app.add_subcommand("pfa", "false-alarm probability at a threshold");
  int pf_k = 0, pf_n = 0;
  double pf_zeta = -1.0;
  bool pf_round = false;
  pfa_cmd->add_option("--k", pf_k, "number of sensors K")->required();
  pfa_cmd->add_option("--n", pf_n, "samples per sensor N")->required();
  pfa_cmd->add_option("--zeta", pf_zeta, "decision threshold")->required();
  pfa_cmd->add_flag("--round-beta", pf_round, "round Beta parameters to integers");

  // moments
  auto* moments = app.add_subcommand("moments", "statistic moments and Beta parameters");
  ScenarioFlags mo_flags;
  bool mo_round = false;
  moments->add_option("--k", mo_flags.k, "number of sensors K")->required();
  moments->add_option("--n", mo_flags.n, "samples per sensor N")->required();
  moments->add_option("--snr-db", mo_flags.snrs_db, "per-user SNR in dB (H1 moments)")->delimiter(',');
  moments->add_option("--sigma2", mo_flags.sigma2, "nominal noise power");
  moments->add_option("--seed", mo_flags.seed, "channel-draw seed (H1 moments)");
  moments->add_flag("--round-beta", mo_round, "round Beta parameters to integers");

  // roc
  auto* roc = app.add_subcommand("roc", "empirical + analytic ROC curves (CSV/JSON)");
  ScenarioFlags roc_flags;
  roc_flags.add_to(roc);

  // pd
  auto* pd_cmd = app.add_subcommand("pd", "Pd-vs-SNR table (CSV/JSON); needs a config with pd_table");
  ScenarioFlags pd_flags;
  pd_flags.add_to(pd_cmd, /*with_snrs=*/false);

  // validate
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  std::vector<int> va_ids;
  int va_threads = 0;
  validate->add_option("criteria", va_ids, "criterion numbers to run (default: all)");
  validate->add_option("--threads", va_threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (threshold->parsed()) return cmd_threshold(th_k, th_n, th_pfa, th_round);
    if (pfa_cmd->parsed()) return cmd_pfa(pf_k, pf_n, pf_zeta, pf_round);
    if (moments->parsed()) return cmd_moments(mo_flags, mo_round);
    if (roc->parsed()) return cmd_roc(roc_flags);
    if (pd_cmd->parsed()) return cmd_pd(pd_flags);
    if (validate->parsed()) return cmd_validate(va_ids, va_threads);
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
