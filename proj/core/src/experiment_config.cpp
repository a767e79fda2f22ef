#include "stsense/experiment_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace stsense {

namespace {

using nlohmann::json;

json grid_to_json(const GridSpec& g) {
  return json{{"points", g.points}, {"min", g.min}, {"max", g.max}, {"scale", g.log_scale ? "log" : "linear"}};
}

GridSpec grid_from_json(const json& j, const GridSpec& defaults) {
  GridSpec g = defaults;
  g.points = j.value("points", g.points);
  g.min = j.value("min", g.min);
  g.max = j.value("max", g.max);
  const std::string scale = j.value("scale", g.log_scale ? "log" : "linear");
  if (scale != "log" && scale != "linear") throw std::invalid_argument("grid scale must be log or linear");
  g.log_scale = scale == "log";
  return g;
}

}  // namespace

std::vector<double> GridSpec::expand() const {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(max > min)) throw std::invalid_argument("grid needs max > min");
  if (log_scale && !(min > 0.0)) throw std::invalid_argument("log grid needs min > 0");
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1.0);
    xs[i] = log_scale ? min * std::pow(max / min, t) : min + (max - min) * t;
  }
  return xs;
}

void ExperimentConfig::validate() const {
  scenario.validate();
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }
}

std::string to_json_string(const ExperimentConfig& config) {
  json j;
  json sc;
  sc["k"] = config.scenario.K;
  sc["n"] = config.scenario.N;
  sc["sigma2"] = config.scenario.sigma2;
  sc["snrs_db"] = config.scenario.snrs_db;
  sc["mu_db"] = config.scenario.mu_db;
  sc["trials"] = config.scenario.trials;
  sc["seed"] = config.scenario.seed;
  sc["threads"] = config.scenario.threads;
  json dets = json::array();
  for (const DetectorKind d : config.scenario.detectors) dets.push_back(detector_name(d));
  sc["detectors"] = dets;
  j["scenario"] = sc;
  j["out"] = config.out;
  j["format"] = config.format;
  j["pfa_grid"] = grid_to_json(config.pfa_grid);
  j["y_grid"] = grid_to_json(config.y_grid);
  if (config.pd_table) {
    j["pd_table"] = json{{"snr1_grid_db", config.pd_table->snr1_grid_db},
                         {"snr_offset_db", config.pd_table->snr_offset_db},
                         {"pfa_target", config.pd_table->pfa_target},
                         {"channel_draws", config.pd_table->channel_draws},
                         {"channel_mode",
                          config.pd_table->channel_mode == ChannelMode::Orthogonal ? "orthogonal"
                                                                                   : "random"}};
  }
  return j.dump(2);
}

ExperimentConfig experiment_config_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  ExperimentConfig config;
  if (j.contains("scenario")) {
    const json& sc = j.at("scenario");
    config.scenario.K = sc.value("k", config.scenario.K);
    config.scenario.N = sc.value("n", config.scenario.N);
    config.scenario.sigma2 = sc.value("sigma2", config.scenario.sigma2);
    config.scenario.snrs_db = sc.value("snrs_db", config.scenario.snrs_db);
    config.scenario.mu_db = sc.value("mu_db", config.scenario.mu_db);
    config.scenario.trials = sc.value("trials", config.scenario.trials);
    config.scenario.seed = sc.value("seed", config.scenario.seed);
    config.scenario.threads = sc.value("threads", config.scenario.threads);
    if (sc.contains("detectors")) {
      config.scenario.detectors.clear();
      for (const auto& name : sc.at("detectors")) {
        config.scenario.detectors.push_back(parse_detector(name.get<std::string>()));
      }
    }
  }
  config.out = j.value("out", config.out);
  config.format = j.value("format", config.format);
  if (j.contains("pfa_grid")) config.pfa_grid = grid_from_json(j.at("pfa_grid"), config.pfa_grid);
  if (j.contains("y_grid")) config.y_grid = grid_from_json(j.at("y_grid"), config.y_grid);
  if (j.contains("pd_table")) {
    const json& pt = j.at("pd_table");
    PdTableSpec spec;
    spec.snr1_grid_db = pt.value("snr1_grid_db", spec.snr1_grid_db);
    spec.snr_offset_db = pt.value("snr_offset_db", spec.snr_offset_db);
    spec.pfa_target = pt.value("pfa_target", spec.pfa_target);
    spec.channel_draws = pt.value("channel_draws", spec.channel_draws);
    const std::string mode = pt.value("channel_mode", std::string("random"));
    if (mode == "orthogonal") {
      spec.channel_mode = ChannelMode::Orthogonal;
    } else if (mode == "random") {
      spec.channel_mode = ChannelMode::Random;
    } else {
      throw std::invalid_argument("channel_mode must be random or orthogonal");
    }
    config.pd_table = spec;
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return experiment_config_from_json(buf.str());
}

}  // namespace stsense
