#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sparsepat/montecarlo.hpp"

namespace sparsepat::cli {

// Everything a command reads. Index lists are 1-based.
struct RunConfig {
  std::string command;
  std::string subcommand;

  int n = 0;
  int p = 0;
  int k = 0;
  std::uint64_t seed = 0;
  double beta_min = 1.0;
  std::vector<double> beta;
  std::optional<double> beta_min_sq;
  std::vector<int> support;
  std::vector<int> alternative;
  int d = 1;
  std::optional<double> miss_energy;
  bool noiseless = false;
  double t = 0.0;
  std::string instance_path;

  double C = 9.0;
  std::string variant = "proof";

  std::string regime;
  std::vector<int> p_grid;
  std::vector<int> p_values;
  std::vector<int> k_values;
  std::vector<double> beta_min_sq_values;

  std::string target = "full";
  std::string design_mode = "fixed";
  std::int64_t trials = 1000;
  double level = 0.95;
  bool random_pattern = false;
  std::string vary;
  std::vector<double> values;
  std::vector<SweepPoint> grid;

  std::uint64_t cap_candidates = 5'000'000;
  int workers = 1;
  std::string out;
  std::string format;

  bool verbose = false;
  bool inject_fault = false;
  int instances = 100;
  std::int64_t mgf_samples = 1'000'000;

  // beta_min_sq if set, else beta_min^2.
  double resolved_beta_min_sq() const;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& config, const std::string& path);

// ExperimentSpec described by the config (mc / sweep).
ExperimentSpec experiment_spec(const RunConfig& config);

// Sweep grid: config.grid if non-empty, else one point per entry of config.values for config.vary.
std::vector<SweepPoint> sweep_grid(const RunConfig& config);

}  // namespace sparsepat::cli
