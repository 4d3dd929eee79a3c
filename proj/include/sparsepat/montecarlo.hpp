#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsepat/bounds.hpp"
#include "sparsepat/decoder.hpp"

namespace sparsepat {

enum class DesignMode { fixed, fresh };
enum class Target { pairwise, full_recovery };

std::string to_string(DesignMode m);
std::string to_string(Target t);
DesignMode parse_design_mode(const std::string& s);
Target parse_target(const std::string& s);

struct ExperimentSpec {
  int n = 0;
  int p = 0;
  int k = 0;
  // Flat signal beta_i = beta_min unless explicit values are given (in support order).
  double beta_min = 1.0;
  std::vector<double> beta_values;
  // Unset: T = {0..k-1}. random_pattern draws T uniformly per trial (full recovery only).
  std::optional<SparsityPattern> true_pattern;
  bool random_pattern = false;
  DesignMode design_mode = DesignMode::fresh;
  Target target = Target::full_recovery;
  // Pairwise alternative F. Unset: drop the last `d` indices of T and add the
  // smallest `d` indices outside T.
  std::optional<SparsityPattern> alternative;
  int d = 1;
  bool noiseless = false;
  std::int64_t trials = 1000;
  std::uint64_t master_seed = 0;
  double level = 0.95;
  std::uint64_t max_candidates = 5'000'000;
};

// Throws ValidationError on an inconsistent spec.
void validate(const ExperimentSpec& spec);

// T used when the pattern is not random per trial.
SparsityPattern resolved_true_pattern(const ExperimentSpec& spec);
SparsityPattern resolved_alternative(const ExperimentSpec& spec, const SparsityPattern& t_pattern);
SparseSignal resolved_signal(const ExperimentSpec& spec, const SparsityPattern& t_pattern);

// Hex FNV-1a-64 of the canonical JSON serialization of an ExperimentSpec.
std::string spec_digest(const ExperimentSpec& spec);

struct TrialBatchResult {
  std::int64_t error_count = 0;
  std::int64_t trials = 0;
  double rate = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 1.0;
  double level = 0.95;
  double bound_value = 1.0;
  double log_bound = 0.0;
  std::uint64_t master_seed = 0;
  std::string spec_digest;

  bool dominated() const { return wilson_low <= bound_value; }
};

// Wilson score interval at two-sided confidence `level`.
// Throws ValidationError unless 0 <= errors <= trials, trials >= 1, 0 < level < 1.
std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t trials, double level);

// Per-trial Z_F > 0 indicators. Trial i depends only on (master_seed, i).
std::vector<std::uint8_t> pairwise_outcomes(const ExperimentSpec& spec, int workers = 1);
// Per-trial decoded != T indicators.
std::vector<std::uint8_t> full_recovery_outcomes(const ExperimentSpec& spec, int workers = 1);

TrialBatchResult run_pairwise(const ExperimentSpec& spec, int workers = 1);
TrialBatchResult run_full_recovery(const ExperimentSpec& spec, int workers = 1);
// Dispatches on spec.target.
TrialBatchResult run_experiment(const ExperimentSpec& spec, int workers = 1);

// Overrides applied to a base spec for one sweep point.
struct SweepPoint {
  std::optional<int> n;
  std::optional<int> p;
  std::optional<int> k;
  std::optional<double> beta_min;
};

struct SweepRow {
  ExperimentSpec spec;
  std::optional<TrialBatchResult> result;
  std::string error;  // set when the point is invalid or the run failed
};

ExperimentSpec apply_point(const ExperimentSpec& base, const SweepPoint& point);

// One row per point in grid order; failures are recorded per row.
std::vector<SweepRow> sweep(const ExperimentSpec& base, const std::vector<SweepPoint>& grid, int workers = 1);

}  // namespace sparsepat
