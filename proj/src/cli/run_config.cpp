#include "sparsepat/cli/run_config.hpp"

#include <fstream>

#include "sparsepat/errors.hpp"

namespace sparsepat::cli {

using nlohmann::json;

namespace {

template <typename T>
json opt_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
void read_opt(const json& j, const char* key, std::optional<T>& dst) {
  if (j.contains(key)) {
    if (j[key].is_null()) {
      dst.reset();
    } else {
      dst = j[key].get<T>();
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& dst) {
  if (j.contains(key) && !j[key].is_null()) dst = j[key].get<T>();
}

json point_to_json(const SweepPoint& pt) {
  json j = json::object();
  if (pt.n) j["n"] = *pt.n;
  if (pt.p) j["p"] = *pt.p;
  if (pt.k) j["k"] = *pt.k;
  if (pt.beta_min) j["beta_min"] = *pt.beta_min;
  return j;
}

SweepPoint point_from_json(const json& j) {
  SweepPoint pt;
  read_opt(j, "n", pt.n);
  read_opt(j, "p", pt.p);
  read_opt(j, "k", pt.k);
  read_opt(j, "beta_min", pt.beta_min);
  return pt;
}

}  // namespace

double RunConfig::resolved_beta_min_sq() const { return beta_min_sq ? *beta_min_sq : beta_min * beta_min; }

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["subcommand"] = c.subcommand;
  j["n"] = c.n;
  j["p"] = c.p;
  j["k"] = c.k;
  j["seed"] = c.seed;
  j["beta_min"] = c.beta_min;
  j["beta"] = c.beta;
  j["beta_min_sq"] = opt_to_json(c.beta_min_sq);
  j["support"] = c.support;
  j["alternative"] = c.alternative;
  j["d"] = c.d;
  j["miss_energy"] = opt_to_json(c.miss_energy);
  j["noiseless"] = c.noiseless;
  j["t"] = c.t;
  j["instance"] = c.instance_path;
  j["C"] = c.C;
  j["variant"] = c.variant;
  j["regime"] = c.regime;
  j["p_grid"] = c.p_grid;
  j["p_values"] = c.p_values;
  j["k_values"] = c.k_values;
  j["beta_min_sq_values"] = c.beta_min_sq_values;
  j["target"] = c.target;
  j["design_mode"] = c.design_mode;
  j["trials"] = c.trials;
  j["level"] = c.level;
  j["random_pattern"] = c.random_pattern;
  j["vary"] = c.vary;
  j["values"] = c.values;
  j["grid"] = json::array();
  for (const auto& pt : c.grid) j["grid"].push_back(point_to_json(pt));
  j["cap_candidates"] = c.cap_candidates;
  j["workers"] = c.workers;
  j["out"] = c.out;
  j["format"] = c.format;
  j["verbose"] = c.verbose;
  j["inject_fault"] = c.inject_fault;
  j["instances"] = c.instances;
  j["mgf_samples"] = c.mgf_samples;
  return j;
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  RunConfig c;
  read(j, "command", c.command);
  read(j, "subcommand", c.subcommand);
  read(j, "n", c.n);
  read(j, "p", c.p);
  read(j, "k", c.k);
  read(j, "seed", c.seed);
  read(j, "beta_min", c.beta_min);
  read(j, "beta", c.beta);
  read_opt(j, "beta_min_sq", c.beta_min_sq);
  read(j, "support", c.support);
  read(j, "alternative", c.alternative);
  read(j, "d", c.d);
  read_opt(j, "miss_energy", c.miss_energy);
  read(j, "noiseless", c.noiseless);
  read(j, "t", c.t);
  read(j, "instance", c.instance_path);
  read(j, "C", c.C);
  read(j, "variant", c.variant);
  read(j, "regime", c.regime);
  read(j, "p_grid", c.p_grid);
  read(j, "p_values", c.p_values);
  read(j, "k_values", c.k_values);
  read(j, "beta_min_sq_values", c.beta_min_sq_values);
  read(j, "target", c.target);
  read(j, "design_mode", c.design_mode);
  read(j, "trials", c.trials);
  read(j, "level", c.level);
  read(j, "random_pattern", c.random_pattern);
  read(j, "vary", c.vary);
  read(j, "values", c.values);
  if (j.contains("grid") && j["grid"].is_array()) {
    for (const auto& pt : j["grid"]) c.grid.push_back(point_from_json(pt));
  }
  read(j, "cap_candidates", c.cap_candidates);
  read(j, "workers", c.workers);
  read(j, "out", c.out);
  read(j, "format", c.format);
  read(j, "verbose", c.verbose);
  read(j, "inject_fault", c.inject_fault);
  read(j, "instances", c.instances);
  read(j, "mgf_samples", c.mgf_samples);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return run_config_from_json(j);
}

void save_run_config(const RunConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write config file '" + path + "'");
  out << to_json(config).dump(2) << '\n';
}

ExperimentSpec experiment_spec(const RunConfig& c) {
  ExperimentSpec s;
  s.n = c.n;
  s.p = c.p;
  s.k = c.k;
  s.beta_min = c.beta_min;
  s.beta_values = c.beta;
  if (!c.support.empty()) s.true_pattern = make_pattern_one_based(c.support, c.p);
  s.random_pattern = c.random_pattern;
  s.design_mode = parse_design_mode(c.design_mode);
  s.target = parse_target(c.target);
  if (!c.alternative.empty()) s.alternative = make_pattern_one_based(c.alternative, c.p);
  s.d = c.d;
  s.noiseless = c.noiseless;
  s.trials = c.trials;
  s.master_seed = c.seed;
  s.level = c.level;
  s.max_candidates = c.cap_candidates;
  return s;
}

std::vector<SweepPoint> sweep_grid(const RunConfig& c) {
  if (!c.grid.empty()) return c.grid;
  std::vector<SweepPoint> grid;
  if (c.values.empty()) return grid;
  if (c.vary != "n" && c.vary != "p" && c.vary != "k" && c.vary != "beta_min") {
    throw ValidationError("--vary must be one of n, p, k, beta_min (got '" + c.vary + "')");
  }
  for (double v : c.values) {
    SweepPoint pt;
    if (c.vary == "n") pt.n = static_cast<int>(v);
    if (c.vary == "p") pt.p = static_cast<int>(v);
    if (c.vary == "k") pt.k = static_cast<int>(v);
    if (c.vary == "beta_min") pt.beta_min = v;
    grid.push_back(pt);
  }
  return grid;
}

}  // namespace sparsepat::cli
