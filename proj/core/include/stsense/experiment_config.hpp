#pragma once

#include <optional>
#include <string>

#include "stsense/simulate.hpp"

namespace stsense {

/// Grid specification for pfa or threshold axes.
struct GridSpec {
  int points = 100;
  double min = 1e-3;
  double max = 0.99;
  bool log_scale = false;

  std::vector<double> expand() const;
};

/// Pd-vs-SNR table block (the two-user sweep).
struct PdTableSpec {
  std::vector<double> snr1_grid_db;
  double snr_offset_db = -2.0;
  double pfa_target = 1e-2;
  int channel_draws = 200;
  ChannelMode channel_mode = ChannelMode::Random;
};

/// Everything a CLI experiment needs: the scenario plus output destination,
/// format and evaluation grids. Round-trips losslessly through JSON.
struct ExperimentConfig {
  Scenario scenario;
  std::string out;           // output path; empty = stdout
  std::string format = "csv";  // csv | json
  GridSpec pfa_grid;
  GridSpec y_grid{1000, 0.0, 1.0, false};
  std::optional<PdTableSpec> pd_table;

  void validate() const;
};

std::string to_json_string(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace stsense
