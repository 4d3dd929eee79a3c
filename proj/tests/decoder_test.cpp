#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <random>

#include "sparsepat/decoder.hpp"
#include "sparsepat/errors.hpp"

namespace sparsepat {
namespace {

// Oracle: least-squares residual through a normal-equations solve, scanned over bitmasks.
std::pair<std::vector<int>, double> brute_force(const Matrix& x, const Vector& y, int k) {
  const int p = static_cast<int>(x.cols());
  std::vector<std::pair<std::vector<int>, double>> all;
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<int> idx;
    for (int i = 0; i < p; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    Matrix a(x.rows(), k);
    for (int j = 0; j < k; ++j) a.col(j) = x.col(idx[static_cast<std::size_t>(j)]);
    const Vector coef = (a.transpose() * a).ldlt().solve(a.transpose() * y);
    all.emplace_back(idx, (y - a * coef).squaredNorm());
  }
  return *std::min_element(all.begin(), all.end(), [](const auto& l, const auto& r) {
    return l.second != r.second ? l.second < r.second : l.first < r.first;
  });
}

ProblemInstance instance_from(std::uint64_t seed, int n, int p, int k, double beta) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Matrix x(n, p);
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < n; ++i) x(i, j) = normal(gen);
  }
  std::vector<int> all(static_cast<std::size_t>(p));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), gen);
  all.resize(static_cast<std::size_t>(k));
  const auto signal = SparseSignal::flat(make_pattern(all, p), beta);
  Vector y = x * signal.dense();
  for (int i = 0; i < n; ++i) y(i) += normal(gen);
  return ProblemInstance(DesignMatrix(x), signal, y);
}

TEST(Decoder, MatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto inst = instance_from(seed, 9, 8, 1 + static_cast<int>(seed % 3), 0.7);
    const auto oracle = brute_force(inst.design().entries(), inst.observation(), inst.k());
    const auto got = decode_exhaustive(inst);
    EXPECT_EQ(got.pattern.indices(), oracle.first) << seed;
    EXPECT_NEAR(got.score, oracle.second, 1e-9 * std::max(1.0, oracle.second));
    EXPECT_GE(got.runner_up_score, got.score);
    EXPECT_EQ(got.candidates_scored, *binomial(8, inst.k()));
  }
}

TEST(Decoder, WorkersDoNotChangeResult) {
  const auto inst = instance_from(77, 12, 14, 3, 0.5);
  const auto one = decode_exhaustive(inst);
  for (int w : {2, 3, 7}) {
    DecoderOptions opt;
    opt.workers = w;
    const auto many = decode_exhaustive(inst, opt);
    EXPECT_EQ(many.pattern, one.pattern);
    EXPECT_EQ(many.score, one.score);
    EXPECT_EQ(many.runner_up_score, one.runner_up_score);
  }
}

TEST(Decoder, TiesBreakToLexicographicallySmallest) {
  // Columns 0 and 1 identical, y along them: {0} and {1} tie exactly.
  Matrix x(3, 3);
  x << 1, 1, 0, 0, 0, 1, 0, 0, 0;
  const auto signal = SparseSignal::flat(make_pattern({1}, 3), 1.0);
  const Vector y = Vector::Unit(3, 0);
  for (int w : {1, 2}) {
    DecoderOptions opt;
    opt.workers = w;
    const auto r = decode_exhaustive(ProblemInstance(DesignMatrix(x), signal, y), opt);
    EXPECT_EQ(r.pattern.indices(), std::vector<int>{0});
    EXPECT_EQ(r.score, r.runner_up_score);
  }
}

TEST(Decoder, ColumnPermutationEquivariance) {
  const auto inst = instance_from(5, 10, 7, 2, 1.0);
  const std::vector<int> perm{3, 6, 0, 1, 5, 2, 4};  // new column j is old column perm[j]
  Matrix permuted(10, 7);
  for (int j = 0; j < 7; ++j) permuted.col(j) = inst.design().entries().col(perm[static_cast<std::size_t>(j)]);
  std::vector<int> new_support;
  for (int j = 0; j < 7; ++j) {
    if (inst.support().contains(perm[static_cast<std::size_t>(j)])) new_support.push_back(j);
  }
  const ProblemInstance moved(DesignMatrix(permuted), SparseSignal::flat(make_pattern(new_support, 7), 1.0),
                              inst.observation());
  const auto a = decode_exhaustive(inst);
  const auto b = decode_exhaustive(moved);
  std::vector<int> mapped;
  for (int j : b.pattern.indices()) mapped.push_back(perm[static_cast<std::size_t>(j)]);
  EXPECT_EQ(make_pattern(mapped, 7), a.pattern);
  EXPECT_NEAR(a.score, b.score, 1e-10);
}

TEST(Decoder, BudgetExceededNamesCount) {
  const auto inst = instance_from(3, 6, 20, 3, 1.0);
  DecoderOptions opt;
  opt.max_candidates = 1000;
  try {
    decode_exhaustive(inst, opt);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("1140"), std::string::npos) << e.what();
  }
}

TEST(Decoder, SingleCandidateRunnerUpIsInfinite) {
  const auto inst = instance_from(4, 5, 2, 2, 1.0);
  const auto r = decode_exhaustive(inst);
  EXPECT_EQ(r.candidates_scored, 1u);
  EXPECT_EQ(r.runner_up_score, std::numeric_limits<double>::infinity());
}

TEST(Decoder, KExceedsNFlagged) {
  const auto inst = instance_from(8, 2, 5, 3, 1.0);
  const auto r = decode_exhaustive(inst);
  EXPECT_TRUE(r.k_exceeds_n);
  EXPECT_NEAR(r.score, 0.0, 1e-12);
}

TEST(Decoder, PairwiseStatisticIsScoreDifference) {
  const auto inst = instance_from(9, 10, 6, 2, 1.0);
  const auto f = make_pattern({0, 5}, 6);
  EXPECT_NEAR(pairwise_statistic(inst, f), score_support(inst, inst.support()) - score_support(inst, f), 1e-12);
  EXPECT_THROW(score_support(inst, make_pattern({0}, 6)), ValidationError);
}

}  // namespace
}  // namespace sparsepat
