#include "sparsepat/json_io.hpp"

#include <cmath>

#include "sparsepat/errors.hpp"

namespace sparsepat {

using nlohmann::json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json pattern_to_json(const SparsityPattern& pattern) {
  json out = json::array();
  for (int i : pattern.indices()) out.push_back(i + 1);
  return out;
}

SparsityPattern pattern_from_json(const json& j, int p) {
  if (!j.is_array()) throw ValidationError("pattern must be a JSON array of 1-based indices");
  return make_pattern_one_based(j.get<std::vector<int>>(), p);
}

json to_json(const ExperimentSpec& spec) {
  json j;
  j["n"] = spec.n;
  j["p"] = spec.p;
  j["k"] = spec.k;
  j["beta_min"] = spec.beta_min;
  j["beta_values"] = spec.beta_values;
  j["true_pattern"] = spec.true_pattern ? pattern_to_json(*spec.true_pattern) : json(nullptr);
  j["random_pattern"] = spec.random_pattern;
  j["design_mode"] = to_string(spec.design_mode);
  j["target"] = to_string(spec.target);
  j["alternative"] = spec.alternative ? pattern_to_json(*spec.alternative) : json(nullptr);
  j["d"] = spec.d;
  j["noiseless"] = spec.noiseless;
  j["trials"] = spec.trials;
  j["master_seed"] = spec.master_seed;
  j["level"] = spec.level;
  j["max_candidates"] = spec.max_candidates;
  return j;
}

ExperimentSpec experiment_spec_from_json(const json& j) {
  ExperimentSpec s;
  s.n = j.value("n", s.n);
  s.p = j.value("p", s.p);
  s.k = j.value("k", s.k);
  s.beta_min = j.value("beta_min", s.beta_min);
  s.beta_values = j.value("beta_values", s.beta_values);
  if (j.contains("true_pattern") && !j["true_pattern"].is_null()) s.true_pattern = pattern_from_json(j["true_pattern"], s.p);
  s.random_pattern = j.value("random_pattern", s.random_pattern);
  if (j.contains("design_mode")) s.design_mode = parse_design_mode(j["design_mode"].get<std::string>());
  if (j.contains("target")) s.target = parse_target(j["target"].get<std::string>());
  if (j.contains("alternative") && !j["alternative"].is_null()) s.alternative = pattern_from_json(j["alternative"], s.p);
  s.d = j.value("d", s.d);
  s.noiseless = j.value("noiseless", s.noiseless);
  s.trials = j.value("trials", s.trials);
  s.master_seed = j.value("master_seed", s.master_seed);
  s.level = j.value("level", s.level);
  s.max_candidates = j.value("max_candidates", s.max_candidates);
  return s;
}

json to_json(const BoundReport& report) {
  json j;
  j["log_bound"] = number_or_null(report.log_bound);
  j["probability"] = report.probability;
  j["d"] = report.d;
  j["projection_energy"] = report.projection_energy ? json(*report.projection_energy) : json(nullptr);
  return j;
}

json to_json(const DecodeResult& result) {
  json j;
  j["support"] = pattern_to_json(result.pattern);
  j["score"] = result.score;
  j["runner_up_score"] = number_or_null(result.runner_up_score);
  j["candidates_scored"] = result.candidates_scored;
  j["k_exceeds_n"] = result.k_exceeds_n;
  return j;
}

json to_json(const TrialBatchResult& result) {
  json j;
  j["error_count"] = result.error_count;
  j["trials"] = result.trials;
  j["rate"] = result.rate;
  j["wilson_low"] = result.wilson_low;
  j["wilson_high"] = result.wilson_high;
  j["level"] = result.level;
  j["bound_value"] = result.bound_value;
  j["log_bound"] = number_or_null(result.log_bound);
  j["dominated"] = result.dominated();
  j["master_seed"] = result.master_seed;
  j["spec_digest"] = result.spec_digest;
  return j;
}

json to_json(const ConditionReport& report) {
  json j;
  j["n"] = report.n;
  j["p"] = report.p;
  j["k"] = report.k;
  j["beta_min_sq"] = report.beta_min_sq;
  j["C"] = report.C;
  j["sufficient_threshold"] = report.sufficient_threshold;
  j["necessary_threshold"] = report.necessary_threshold;
  j["convexity_ok"] = report.convexity_ok;
  j["sufficient_ok"] = report.sufficient_ok;
  j["necessary_ok"] = report.necessary_ok;
  return j;
}

}  // namespace sparsepat
