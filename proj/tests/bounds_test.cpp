#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sparsepat/bounds.hpp"
#include "sparsepat/errors.hpp"

namespace sparsepat {
namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kC = (3.0 - 2.0 * kSqrt2) / 2.0;

TEST(Constants, ClosedForms) {
  EXPECT_NEAR(ChernoffConstants::c, 0.0857864376269049, 1e-15);
  EXPECT_NEAR(chernoff_objective(ChernoffConstants::t_star), kSqrt2 - 1.5, 1e-15);
  EXPECT_NEAR(ChernoffConstants::min_value, -ChernoffConstants::c, 1e-15);
}

// Two orthonormal columns: T = {0}, F = {1}. Then Z_F = y_1^2 - y_0^2 with
// y_0 ~ N(beta, 1), y_1 ~ N(0, 1), whose log-MGF is elementary.
DesignMatrix unit_design() { return DesignMatrix(Matrix::Identity(4, 2)); }

double unit_log_mgf(double beta, double t) {
  return -0.5 * std::log(1.0 - 2.0 * t) - 0.5 * std::log(1.0 + 2.0 * t) - t * beta * beta / (1.0 + 2.0 * t);
}

TEST(ExactMgf, MatchesScalarClosedForm) {
  const auto t = make_pattern({0}, 2);
  const auto f = make_pattern({1}, 2);
  for (double beta : {0.5, 1.0, 3.0}) {
    const auto s = SparseSignal::flat(t, beta);
    for (double tt : {-0.45, -0.2, 0.0, 0.1, ChernoffConstants::t_star, 0.49}) {
      EXPECT_NEAR(exact_quadratic_log_mgf(unit_design(), s, t, f, tt), unit_log_mgf(beta, tt), 1e-12)
          << beta << " " << tt;
    }
  }
  EXPECT_THROW(exact_quadratic_log_mgf(unit_design(), SparseSignal::flat(t, 1.0), t, f, 0.5), DomainError);
  EXPECT_THROW(exact_quadratic_log_mgf(unit_design(), SparseSignal::flat(t, 1.0), t, f, -0.5), DomainError);
}

TEST(PairwiseBound, OrthonormalExample) {
  const auto t = make_pattern({0}, 2);
  const auto f = make_pattern({1}, 2);
  const auto r = pairwise_conditional_bound(unit_design(), SparseSignal::flat(t, 4.0), t, f);
  EXPECT_NEAR(*r.projection_energy, 16.0, 1e-12);
  EXPECT_EQ(r.d, 1);
  EXPECT_NEAR(r.log_bound, -16.0 * kC + 0.5, 1e-12);
  EXPECT_NEAR(r.probability, 0.4179, 1e-4);
}

TEST(PairwiseBound, IdenticalSupportsAreVacuous) {
  const auto t = make_pattern({0}, 2);
  const auto r = pairwise_conditional_bound(unit_design(), SparseSignal::flat(t, 4.0), t, t);
  EXPECT_EQ(r.d, 0);
  EXPECT_EQ(r.probability, 1.0);
}

TEST(ChainExponent, HoldsForNonNegativeT) {
  const auto t = make_pattern({0}, 2);
  const auto f = make_pattern({1}, 2);
  for (double beta : {0.3, 1.0, 2.0}) {
    const auto s = SparseSignal::flat(t, beta);
    for (int i = 0; i <= 24; ++i) {
      const double tt = 0.49 * i / 24.0;
      EXPECT_LE(exact_quadratic_log_mgf(unit_design(), s, t, f, tt), chernoff_chain_exponent(tt, beta * beta, 1) + 1e-12);
    }
  }
}

// The step bounding ||(I - 2t Psi)^{-1/2}||^2 by 1/(1-2t) needs t >= 0; below zero the chain breaks.
TEST(ChainExponent, FailsForNegativeT) {
  const auto t = make_pattern({0}, 2);
  const auto f = make_pattern({1}, 2);
  const double exact = exact_quadratic_log_mgf(unit_design(), SparseSignal::flat(t, 1.0), t, f, -0.3);
  EXPECT_GT(exact, chernoff_chain_exponent(-0.3, 1.0, 1) + 0.3);
}

TEST(ChiSquare, MgfMatchesSampling) {
  std::mt19937_64 gen(42);
  std::chi_squared_distribution<double> chi(5.0);
  double acc = 0.0;
  constexpr int kN = 400000;
  for (int i = 0; i < kN; ++i) acc += std::exp(-kC * chi(gen));
  EXPECT_NEAR(chi_square_log_mgf(-kC, 5), std::log(acc / kN), 0.01 * std::abs(chi_square_log_mgf(-kC, 5)));
  EXPECT_THROW(chi_square_log_mgf(0.5, 3), DomainError);
}

TEST(AveragedBound, Example) {
  const auto r = averaged_pairwise_bound(10, 1, 1, 1.0);
  EXPECT_NEAR(r.log_bound, -4.5 * std::log(1.0 + 2.0 * kC) + 0.5, 1e-12);
  EXPECT_NEAR(r.log_bound, -0.212562, 1e-6);
  EXPECT_NEAR(r.probability, 0.8085, 1e-4);
}

double union_sum_oracle(int n, int p, int k, double b) {
  double total = 0.0;
  for (int d = 1; d <= std::min(k, p - k); ++d) {
    const double count = std::tgamma(k + 1.0) / (std::tgamma(d + 1.0) * std::tgamma(k - d + 1.0)) *
                         std::tgamma(p - k + 1.0) / (std::tgamma(d + 1.0) * std::tgamma(p - k - d + 1.0));
    total += count * std::pow(1.0 + 2.0 * kC * d * b, -(n - k) / 2.0) * std::exp(d / 2.0);
  }
  return total;
}

TEST(UnionSum, MatchesDirectSummation) {
  for (auto [n, p, k, b] : {std::tuple{60, 12, 2, 1.0}, {200, 20, 3, 2.0}, {400, 30, 5, 0.7}, {40, 12, 2, 1.0}}) {
    const double oracle = union_sum_oracle(n, p, k, b);
    const auto r = union_error_bound_sum(n, p, k, b);
    EXPECT_NEAR(r.log_bound, std::log(oracle), 1e-10) << n << " " << p << " " << k;
    EXPECT_NEAR(r.probability, std::min(1.0, oracle), 1e-12);
  }
  EXPECT_EQ(union_error_bound_sum(40, 12, 2, 1.0).probability, 1.0);
}

TEST(ClosedForm, Example) {
  const double b = std::exp(1.0) - 1.0;
  const auto r = union_error_bound_closed_form(52, 101, 1, b, 9.0);
  EXPECT_NEAR(r.probability, std::exp(2.5) / 1e4, 1e-12);
}

TEST(ClosedForm, PreconditionsNamed) {
  const double b = std::exp(1.0) - 1.0;
  try {
    union_error_bound_closed_form(52, 2, 1, b, 9.0);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.hypothesis(), "p > 2k");
  }
  try {
    union_error_bound_closed_form(5, 101, 1, b, 9.0);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(e.hypothesis().find("4(1+k beta_min^2)^2"), std::string::npos);
  }
  try {
    union_error_bound_closed_form(40, 101, 1, b, 9.0);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.hypothesis(), "n - k > C max{...}");
  }
}

TEST(Convexity, StrictInequality) {
  // (n-k) b > 4 (1+kb)^2/(kb): k = 1, b = 1 needs n - 1 > 16.
  EXPECT_FALSE(convexity_condition(17, 1, 1.0));
  EXPECT_TRUE(convexity_condition(18, 1, 1.0));
}

TEST(FCurve, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (double d : {1.0, 2.5, 7.0}) {
    const auto mid = f_curve(d, 300, 80, 8, 0.9);
    const auto up = f_curve(d + h, 300, 80, 8, 0.9);
    const auto down = f_curve(d - h, 300, 80, 8, 0.9);
    EXPECT_NEAR(mid.f_prime, (up.f - down.f) / (2 * h), 1e-6 * std::max(1.0, std::abs(mid.f_prime)));
    EXPECT_NEAR(mid.f_second, (up.f_prime - down.f_prime) / (2 * h), 1e-6 * std::max(1.0, std::abs(mid.f_second)));
  }
  EXPECT_THROW(f_curve(0.0, 10, 5, 2, 1.0), DomainError);
}

// The convexity inequality alone does not give f'' > 0: k = 1, b = 1, n - k = 17.
TEST(FCurve, ConvexityHypothesisDoesNotImplyPositiveCurvature) {
  EXPECT_TRUE(convexity_condition(19, 1, 1.0));
  EXPECT_LT(f_curve(1.0, 19, 10, 1, 1.0).f_second, 0.0);
  EXPECT_FALSE(f_convex_on_range(19, 1, 1.0));
}

TEST(SampleSize, SufficientExample) {
  const double b = std::exp(1.0) - 1.0;
  EXPECT_NEAR(sufficient_sample_size(101, 1, b, 9.0), 1.0 + 9.0 * (std::log(100.0) + 1.0), 1e-10);
  EXPECT_NEAR(sufficient_sample_size(101, 1, b, 9.0), 51.447, 1e-3);
}

TEST(SampleSize, NecessaryExample) {
  const double expected = (std::log(4950.0) - 1.0) / (0.5 * std::log(2.96));
  EXPECT_NEAR(necessary_sample_size(100, 2, 1.0), expected, 1e-10);
  EXPECT_NEAR(necessary_sample_size(100, 2, 1.0), 13.836, 1e-3);
  EXPECT_THROW(necessary_sample_size(100, 2, 0.0), DomainError);
}

TEST(SampleSize, NecessaryBelowSufficientOnGrid) {
  for (int p : {20, 50, 100, 400, 1000}) {
    for (int k : {1, 2, 5, 9}) {
      for (double b : {0.1, 0.5, 1.0, 4.0}) {
        if (p <= 2 * k) continue;
        EXPECT_LE(necessary_sample_size(p, k, b), sufficient_sample_size(p, k, b, 9.0)) << p << " " << k << " " << b;
      }
    }
  }
}

TEST(SampleSize, VariantsParse) {
  EXPECT_EQ(parse_condition_variant("statement"), ConditionVariant::statement);
  EXPECT_EQ(to_string(ConditionVariant::corollary), "corollary");
  EXPECT_THROW(parse_condition_variant("nope"), ValidationError);
}

TEST(CheckConditions, Report) {
  const auto r = check_conditions(200, 100, 2, 1.0, 9.0);
  EXPECT_TRUE(r.necessary_ok);
  EXPECT_TRUE(r.sufficient_ok);
  EXPECT_TRUE(r.convexity_ok);
  EXPECT_FALSE(check_conditions(10, 100, 2, 1.0, 9.0).necessary_ok);
}

}  // namespace
}  // namespace sparsepat
