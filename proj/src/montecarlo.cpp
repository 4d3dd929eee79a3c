#include "sparsepat/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "sparsepat/errors.hpp"
#include "sparsepat/json_io.hpp"
#include "sparsepat/philox.hpp"

namespace sparsepat {

std::string to_string(DesignMode m) { return m == DesignMode::fixed ? "fixed" : "fresh"; }
std::string to_string(Target t) { return t == Target::pairwise ? "pairwise" : "full"; }

DesignMode parse_design_mode(const std::string& s) {
  if (s == "fixed") return DesignMode::fixed;
  if (s == "fresh") return DesignMode::fresh;
  throw ValidationError("unknown design mode '" + s + "' (expected fixed or fresh)");
}

Target parse_target(const std::string& s) {
  if (s == "pairwise") return Target::pairwise;
  if (s == "full" || s == "recover" || s == "full-recovery") return Target::full_recovery;
  throw ValidationError("unknown target '" + s + "' (expected pairwise or full)");
}

void validate(const ExperimentSpec& spec) {
  const auto fail = [](const std::string& m) { throw ValidationError(m); };
  if (spec.n < 1) fail("n must be >= 1");
  if (spec.k < 1) fail("k must be >= 1");
  if (spec.k > spec.p) fail("k = " + std::to_string(spec.k) + " exceeds p = " + std::to_string(spec.p));
  if (spec.target == Target::pairwise && spec.p == spec.k) fail("pairwise experiments need p > k");
  if (spec.trials < 1) fail("trials must be >= 1");
  if (!(spec.level > 0.0 && spec.level < 1.0)) fail("level must lie in (0, 1)");
  if (spec.beta_values.empty()) {
    if (!(spec.beta_min > 0.0) || !std::isfinite(spec.beta_min)) fail("beta_min must be positive");
  } else if (static_cast<int>(spec.beta_values.size()) != spec.k) {
    fail("beta_values has " + std::to_string(spec.beta_values.size()) + " entries, expected k = " +
         std::to_string(spec.k));
  }
  if (spec.true_pattern) {
    if (spec.random_pattern) fail("true_pattern and random_pattern are mutually exclusive");
    if (spec.true_pattern->ambient_dim() != spec.p || spec.true_pattern->cardinality() != spec.k) {
      fail("true_pattern must have k indices in [1, p]");
    }
  }
  if (spec.target == Target::pairwise) {
    if (spec.random_pattern) fail("pairwise experiments need a fixed true pattern");
    if (spec.alternative) {
      if (spec.alternative->ambient_dim() != spec.p || spec.alternative->cardinality() != spec.k) {
        fail("alternative pattern must have k indices in [1, p]");
      }
    } else if (spec.d < 0 || spec.d > spec.k || spec.d > spec.p - spec.k) {
      fail("d must satisfy 0 <= d <= min(k, p - k)");
    }
  }
  // Signal construction rejects zero entries.
  if (!spec.beta_values.empty()) (void)SparseSignal(leading_pattern(spec.k, spec.p), spec.beta_values);
}

SparsityPattern resolved_true_pattern(const ExperimentSpec& spec) {
  return spec.true_pattern ? *spec.true_pattern : leading_pattern(spec.k, spec.p);
}

SparsityPattern resolved_alternative(const ExperimentSpec& spec, const SparsityPattern& t_pattern) {
  if (spec.alternative) return *spec.alternative;
  std::vector<int> idx(t_pattern.indices().begin(), t_pattern.indices().end() - spec.d);
  int added = 0;
  for (int i = 0; i < spec.p && added < spec.d; ++i) {
    if (!t_pattern.contains(i)) {
      idx.push_back(i);
      ++added;
    }
  }
  return SparsityPattern(std::move(idx), spec.p);
}

SparseSignal resolved_signal(const ExperimentSpec& spec, const SparsityPattern& t_pattern) {
  if (spec.beta_values.empty()) return SparseSignal::flat(t_pattern, spec.beta_min);
  return SparseSignal(t_pattern, spec.beta_values);
}

std::string spec_digest(const ExperimentSpec& spec) {
  const std::string canonical = to_json(spec).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t trials, double level) {
  if (trials < 1 || errors < 0 || errors > trials) {
    throw ValidationError("wilson_interval: need 0 <= errors <= trials and trials >= 1");
  }
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("wilson_interval: level must lie in (0, 1)");
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + level / 2.0);
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(errors) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (phat + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  double low = errors == 0 ? 0.0 : std::max(0.0, center - half);
  double high = errors == trials ? 1.0 : std::min(1.0, center + half);
  low = std::min(low, phat);
  high = std::max(high, phat);
  return {low, high};
}

namespace {

// Runs body(i) for every trial, split into contiguous chunks across workers.
template <typename Body>
std::vector<std::uint8_t> run_trials(std::int64_t trials, int workers, Body body) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(trials), 0);
  const std::int64_t w = std::clamp<std::int64_t>(workers, 1, trials);
  if (w == 1) {
    for (std::int64_t i = 0; i < trials; ++i) out[static_cast<std::size_t>(i)] = body(i) ? 1 : 0;
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  for (std::int64_t t = 0; t < w; ++t) {
    const std::int64_t lo = trials * t / w;
    const std::int64_t hi = trials * (t + 1) / w;
    pool.emplace_back([&out, &body, lo, hi] {
      for (std::int64_t i = lo; i < hi; ++i) out[static_cast<std::size_t>(i)] = body(i) ? 1 : 0;
    });
  }
  pool.clear();  // joins
  return out;
}

std::uint64_t trial_design_seed(const ExperimentSpec& spec, std::int64_t i) {
  return spec.design_mode == DesignMode::fixed
             ? spec.master_seed
             : derive_seed(spec.master_seed, Stream::trial_design_seed, static_cast<std::uint64_t>(i));
}

std::uint64_t trial_noise_seed(const ExperimentSpec& spec, std::int64_t i) {
  return derive_seed(spec.master_seed, Stream::trial_noise_seed, static_cast<std::uint64_t>(i));
}

// Uniform k-subset of {0..p-1} (Floyd's algorithm on counter-based uniforms).
SparsityPattern random_pattern(int p, int k, std::uint64_t seed) {
  const CounterRng rng(seed, Stream::trial_pattern);
  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  std::uint64_t draw = 0;
  for (int j = p - k; j < p; ++j) {
    const int r = static_cast<int>(rng.uniform(draw++) * (j + 1));
    const int pick = std::min(r, j);
    if (std::find(chosen.begin(), chosen.end(), pick) == chosen.end()) {
      chosen.push_back(pick);
    } else {
      chosen.push_back(j);
    }
  }
  return SparsityPattern(std::move(chosen), p);
}

TrialBatchResult summarize(const ExperimentSpec& spec, const std::vector<std::uint8_t>& outcomes,
                           const BoundReport& bound) {
  TrialBatchResult r;
  r.trials = spec.trials;
  r.error_count = std::accumulate(outcomes.begin(), outcomes.end(), std::int64_t{0});
  r.rate = static_cast<double>(r.error_count) / static_cast<double>(r.trials);
  std::tie(r.wilson_low, r.wilson_high) = wilson_interval(r.error_count, r.trials, spec.level);
  r.level = spec.level;
  r.bound_value = bound.probability;
  r.log_bound = bound.log_bound;
  r.master_seed = spec.master_seed;
  r.spec_digest = spec_digest(spec);
  return r;
}

BoundReport pairwise_bound_for(const ExperimentSpec& spec) {
  const SparsityPattern t = resolved_true_pattern(spec);
  const SparsityPattern f = resolved_alternative(spec, t);
  const SparseSignal signal = resolved_signal(spec, t);
  const SparsityPattern missed = pattern_difference(t, f);
  if (spec.design_mode == DesignMode::fixed) {
    return pairwise_conditional_bound(gaussian_design(spec.n, spec.p, spec.master_seed), signal, t, f);
  }
  if (missed.empty() || spec.n <= spec.k) return BoundReport::from_log(0.0, missed.cardinality());
  return averaged_pairwise_bound(spec.n, spec.k, missed.cardinality(), signal.energy_on(missed));
}

}  // namespace

std::vector<std::uint8_t> pairwise_outcomes(const ExperimentSpec& spec, int workers) {
  validate(spec);
  if (spec.target != Target::pairwise) throw ValidationError("pairwise_outcomes: spec target is not pairwise");
  const SparsityPattern t = resolved_true_pattern(spec);
  const SparsityPattern f = resolved_alternative(spec, t);
  const SparseSignal signal = resolved_signal(spec, t);
  const bool same = (t == f);

  if (spec.design_mode == DesignMode::fixed) {
    const DesignMatrix x = gaussian_design(spec.n, spec.p, spec.master_seed);
    const Vector mu = signal_mean(x, signal);
    const Projector pi_t = build_projector(x, t);
    const Projector pi_f = same ? pi_t : build_projector(x, f);
    return run_trials(spec.trials, workers, [&](std::int64_t i) {
      Vector y = mu;
      if (!spec.noiseless) y += gaussian_noise(spec.n, trial_noise_seed(spec, i));
      const double z = residual_energy(pi_t, y) - residual_energy(pi_f, y);
      return z > 0.0;
    });
  }

  return run_trials(spec.trials, workers, [&](std::int64_t i) {
    const DesignMatrix x = gaussian_design(spec.n, spec.p, trial_design_seed(spec, i));
    Vector y = synthesize_observation(x, signal, trial_noise_seed(spec, i), spec.noiseless);
    const Projector pi_t = build_projector(x, t);
    const Projector pi_f = same ? pi_t : build_projector(x, f);
    const double z = residual_energy(pi_t, y) - residual_energy(pi_f, y);
    return z > 0.0;
  });
}

std::vector<std::uint8_t> full_recovery_outcomes(const ExperimentSpec& spec, int workers) {
  validate(spec);
  const auto total = binomial(spec.p, spec.k);
  if (!total || *total > spec.max_candidates) {
    throw ResourceError("exhaustive decode needs C(" + std::to_string(spec.p) + "," + std::to_string(spec.k) +
                        ") = " + (total ? std::to_string(*total) : std::string("> 2^64")) +
                        " candidates, over the cap of " + std::to_string(spec.max_candidates));
  }
  DecoderOptions options;
  options.max_candidates = spec.max_candidates;
  const SparsityPattern fixed_t = resolved_true_pattern(spec);
  const bool random_t = spec.random_pattern;
  return run_trials(spec.trials, workers, [&](std::int64_t i) {
    const SparsityPattern t =
        random_t ? random_pattern(spec.p, spec.k,
                                  derive_seed(spec.master_seed, Stream::trial_pattern, static_cast<std::uint64_t>(i)))
                 : fixed_t;
    SparseSignal signal = resolved_signal(spec, t);
    DesignMatrix x = gaussian_design(spec.n, spec.p, trial_design_seed(spec, i));
    const ProblemInstance instance = make_instance(std::move(x), std::move(signal), trial_noise_seed(spec, i),
                                                   spec.noiseless);
    return decode_exhaustive(instance, options).pattern != t;
  });
}

TrialBatchResult run_pairwise(const ExperimentSpec& spec, int workers) {
  const auto outcomes = pairwise_outcomes(spec, workers);
  return summarize(spec, outcomes, pairwise_bound_for(spec));
}

TrialBatchResult run_full_recovery(const ExperimentSpec& spec, int workers) {
  const auto outcomes = full_recovery_outcomes(spec, workers);
  BoundReport bound;
  if (spec.p == spec.k) {
    bound = BoundReport::from_log(-std::numeric_limits<double>::infinity(), 0);
  } else if (spec.n <= spec.k) {
    bound = BoundReport::from_log(0.0, 0);
  } else {
    const SparseSignal signal = resolved_signal(spec, leading_pattern(spec.k, spec.p));
    const double b = signal.beta_min();
    bound = union_error_bound_sum(spec.n, spec.p, spec.k, b * b);
  }
  return summarize(spec, outcomes, bound);
}

TrialBatchResult run_experiment(const ExperimentSpec& spec, int workers) {
  return spec.target == Target::pairwise ? run_pairwise(spec, workers) : run_full_recovery(spec, workers);
}

ExperimentSpec apply_point(const ExperimentSpec& base, const SweepPoint& point) {
  ExperimentSpec s = base;
  if (point.n) s.n = *point.n;
  if (point.p) s.p = *point.p;
  if (point.k) s.k = *point.k;
  if (point.beta_min) {
    s.beta_min = *point.beta_min;
    s.beta_values.clear();
  }
  return s;
}

std::vector<SweepRow> sweep(const ExperimentSpec& base, const std::vector<SweepPoint>& grid, int workers) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const auto& point : grid) {
    SweepRow row;
    row.spec = apply_point(base, point);
    try {
      row.result = run_experiment(row.spec, workers);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sparsepat
