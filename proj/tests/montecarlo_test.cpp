#include <gtest/gtest.h>

#include <cmath>

#include "sparsepat/errors.hpp"
#include "sparsepat/json_io.hpp"
#include "sparsepat/montecarlo.hpp"

namespace sparsepat {
namespace {

ExperimentSpec small_spec(Target target, DesignMode mode) {
  ExperimentSpec s;
  s.n = 8;
  s.p = 7;
  s.k = 2;
  s.beta_min = 0.8;
  s.target = target;
  s.design_mode = mode;
  s.trials = 300;
  s.master_seed = 1234;
  return s;
}

TEST(Wilson, TextbookValues) {
  const auto [lo, hi] = wilson_interval(5, 100, 0.95);
  EXPECT_NEAR(lo, 0.0215, 1e-4);
  EXPECT_NEAR(hi, 0.1118, 1e-4);
  const auto [lo0, hi0] = wilson_interval(0, 50, 0.99);
  EXPECT_EQ(lo0, 0.0);
  EXPECT_GT(hi0, 0.0);
  EXPECT_THROW(wilson_interval(3, 0, 0.95), ValidationError);
  EXPECT_THROW(wilson_interval(1, 10, 1.5), ValidationError);
}

TEST(MonteCarlo, OutcomesIndependentOfWorkers) {
  for (Target target : {Target::pairwise, Target::full_recovery}) {
    for (DesignMode mode : {DesignMode::fixed, DesignMode::fresh}) {
      const auto spec = small_spec(target, mode);
      const auto one = target == Target::pairwise ? pairwise_outcomes(spec, 1) : full_recovery_outcomes(spec, 1);
      const auto four = target == Target::pairwise ? pairwise_outcomes(spec, 4) : full_recovery_outcomes(spec, 4);
      EXPECT_EQ(one, four);
    }
  }
}

TEST(MonteCarlo, ShorterRunIsPrefix) {
  auto spec = small_spec(Target::full_recovery, DesignMode::fresh);
  spec.random_pattern = true;
  const auto longer = full_recovery_outcomes(spec, 3);
  spec.trials = 100;
  const auto shorter = full_recovery_outcomes(spec, 2);
  EXPECT_TRUE(std::equal(shorter.begin(), shorter.end(), longer.begin()));
}

TEST(MonteCarlo, SeedChangesOutcomes) {
  auto spec = small_spec(Target::pairwise, DesignMode::fresh);
  spec.beta_min = 0.3;
  const auto a = pairwise_outcomes(spec);
  spec.master_seed += 1;
  EXPECT_NE(a, pairwise_outcomes(spec));
}

TEST(MonteCarlo, NoiselessRecoveryIsPerfect) {
  auto spec = small_spec(Target::full_recovery, DesignMode::fresh);
  spec.noiseless = true;
  const auto r = run_full_recovery(spec);
  EXPECT_EQ(r.error_count, 0);
}

TEST(MonteCarlo, ResultFieldsConsistent) {
  const auto spec = small_spec(Target::pairwise, DesignMode::fixed);
  const auto r = run_pairwise(spec, 2);
  EXPECT_EQ(r.trials, spec.trials);
  EXPECT_DOUBLE_EQ(r.rate, static_cast<double>(r.error_count) / r.trials);
  EXPECT_LE(r.wilson_low, r.rate);
  EXPECT_GE(r.wilson_high, r.rate);
  EXPECT_NEAR(r.bound_value, std::min(1.0, std::exp(r.log_bound)), 1e-15);
  EXPECT_EQ(r.spec_digest, spec_digest(spec));
  EXPECT_EQ(r.master_seed, spec.master_seed);
}

TEST(MonteCarlo, ValidationRejectsBadSpecs) {
  auto spec = small_spec(Target::pairwise, DesignMode::fixed);
  spec.k = 8;
  EXPECT_THROW(validate(spec), ValidationError);
  spec = small_spec(Target::pairwise, DesignMode::fixed);
  spec.trials = 0;
  EXPECT_THROW(validate(spec), ValidationError);
  spec = small_spec(Target::pairwise, DesignMode::fixed);
  spec.d = 6;
  EXPECT_THROW(validate(spec), ValidationError);
}

TEST(MonteCarlo, DefaultAlternativeSwapsTail) {
  auto spec = small_spec(Target::pairwise, DesignMode::fixed);
  spec.d = 1;
  const auto t = resolved_true_pattern(spec);
  EXPECT_EQ(t.indices(), (std::vector<int>{0, 1}));
  EXPECT_EQ(resolved_alternative(spec, t).indices(), (std::vector<int>{0, 2}));
}

TEST(Sweep, RowsCarryErrorsInsteadOfThrowing) {
  const auto base = small_spec(Target::full_recovery, DesignMode::fresh);
  std::vector<SweepPoint> grid(3);
  grid[0].n = 6;
  grid[1].k = 9;
  grid[2].beta_min = 2.0;
  const auto rows = sweep(base, grid, 2);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows[0].result.has_value());
  EXPECT_FALSE(rows[1].result.has_value());
  EXPECT_FALSE(rows[1].error.empty());
  EXPECT_TRUE(rows[2].result.has_value());
  EXPECT_EQ(rows[0].spec.n, 6);
}

TEST(SpecJson, RoundTrip) {
  auto spec = small_spec(Target::pairwise, DesignMode::fixed);
  spec.alternative = make_pattern({0, 5}, 7);
  const auto back = experiment_spec_from_json(to_json(spec));
  EXPECT_EQ(to_json(back).dump(), to_json(spec).dump());
  EXPECT_EQ(spec_digest(back), spec_digest(spec));
}

}  // namespace
}  // namespace sparsepat
