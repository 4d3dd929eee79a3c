#include <gtest/gtest.h>

#include <cmath>

#include "sparsepat/errors.hpp"
#include "sparsepat/model.hpp"
#include "sparsepat/projector.hpp"

namespace sparsepat {
namespace {

TEST(DesignMatrix, RejectsNonFinite) {
  Matrix m = Matrix::Ones(3, 2);
  m(1, 1) = std::nan("");
  EXPECT_THROW(DesignMatrix{m}, ValidationError);
}

TEST(SparseSignal, Accessors) {
  const SparseSignal s(make_pattern({1, 3}, 5), {2.0, -0.5});
  EXPECT_DOUBLE_EQ(s.beta_min(), 0.5);
  EXPECT_DOUBLE_EQ(s.energy(), 4.25);
  EXPECT_DOUBLE_EQ(s.at(3), -0.5);
  EXPECT_DOUBLE_EQ(s.at(0), 0.0);
  EXPECT_DOUBLE_EQ(s.energy_on(make_pattern({3}, 5)), 0.25);
  EXPECT_THROW(SparseSignal(make_pattern({1}, 5), {0.0}), ValidationError);
  EXPECT_THROW(SparseSignal(make_pattern({1}, 5), {1.0, 2.0}), ValidationError);
}

TEST(GaussianDesign, DeterministicAndColumnMajorPrefix) {
  const auto a = gaussian_design(6, 4, 11);
  const auto b = gaussian_design(6, 4, 11);
  const auto c = gaussian_design(6, 5, 11);
  EXPECT_EQ(a.entries(), b.entries());
  // Adding a column leaves existing entries untouched.
  EXPECT_EQ(c.entries().leftCols(4), a.entries());
  EXPECT_NE(gaussian_design(6, 4, 12).entries(), a.entries());
}

TEST(Observation, NoiselessEqualsMean) {
  const auto x = gaussian_design(8, 5, 3);
  const auto s = SparseSignal::flat(make_pattern({0, 4}, 5), 1.5);
  const Vector y = synthesize_observation(x, s, 7, true);
  const Vector expected = 1.5 * (x.entries().col(0) + x.entries().col(4));
  EXPECT_LT((y - expected).norm(), 1e-12);
}

// Oracle: Pi = A (A'A)^{-1} A' for full column rank A.
Matrix normal_equation_projector(const Matrix& a) {
  return a * (a.transpose() * a).ldlt().solve(a.transpose());
}

TEST(Projector, MatchesNormalEquations) {
  const auto x = gaussian_design(10, 6, 21);
  const auto f = make_pattern({0, 2, 5}, 6);
  const Projector pi = build_projector(x, f);
  const Matrix dense = pi.dense();
  const Matrix oracle = normal_equation_projector(x.submatrix(f));
  EXPECT_EQ(pi.rank(), 3);
  EXPECT_LT((dense - oracle).norm(), 1e-10);
  EXPECT_LT((dense * dense - dense).norm(), 1e-10);
  EXPECT_LT((dense - dense.transpose()).norm(), 1e-12);
  const Vector v = gaussian_noise(10, 5);
  EXPECT_NEAR(residual_energy(pi, v), (v - oracle * v).squaredNorm(), 1e-10);
}

TEST(Projector, RankDeficientColumns) {
  Matrix a(5, 3);
  a.col(0) = gaussian_noise(5, 1);
  a.col(1) = 2.0 * a.col(0);
  a.col(2) = gaussian_noise(5, 2);
  const Projector pi = build_projector(a);
  EXPECT_EQ(pi.rank(), 2);
  Matrix independent(5, 2);
  independent << a.col(0), a.col(2);
  EXPECT_LT((pi.dense() - normal_equation_projector(independent)).norm(), 1e-10);
}

TEST(Projector, EmptyAndZeroColumns) {
  EXPECT_EQ(build_projector(Matrix(4, 0)).rank(), 0);
  EXPECT_EQ(build_projector(Matrix::Zero(4, 2)).rank(), 0);
  const Vector v = Vector::Ones(4);
  EXPECT_DOUBLE_EQ(residual_energy(build_projector(Matrix(4, 0)), v), 4.0);
}

TEST(ProblemInstance, ValidatesDimensions) {
  const auto x = gaussian_design(4, 3, 1);
  const auto s = SparseSignal::flat(make_pattern({0}, 3), 1.0);
  EXPECT_THROW(ProblemInstance(x, s, Vector::Zero(5)), ValidationError);
  EXPECT_THROW(ProblemInstance(x, SparseSignal::flat(make_pattern({0}, 4), 1.0), Vector::Zero(4)), ValidationError);
}

}  // namespace
}  // namespace sparsepat
