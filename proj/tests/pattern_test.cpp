#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <vector>

#include "sparsepat/errors.hpp"
#include "sparsepat/pattern.hpp"

namespace sparsepat {
namespace {

TEST(SparsityPattern, SortsAndValidates) {
  const auto s = make_pattern({4, 1, 2}, 6);
  EXPECT_EQ(s.indices(), (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(s.to_string(1), "{2,3,5}");
  EXPECT_THROW(make_pattern({1, 1}, 4), ValidationError);
  EXPECT_THROW(make_pattern({4}, 4), ValidationError);
  EXPECT_THROW(make_pattern({-1}, 4), ValidationError);
  EXPECT_THROW(make_pattern_one_based({0}, 4), ValidationError);
}

TEST(SparsityPattern, Difference) {
  const auto t = make_pattern({0, 1, 2}, 8);
  const auto f = make_pattern({1, 2, 5}, 8);
  EXPECT_EQ(pattern_difference(t, f).indices(), std::vector<int>{0});
  EXPECT_EQ(pattern_difference(f, t).indices(), std::vector<int>{5});
  EXPECT_THROW(pattern_difference(t, make_pattern({0}, 9)), ValidationError);
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(20, 3), 1140u);
  EXPECT_EQ(binomial(12, 2), 66u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(5, 6), 0u);
  EXPECT_EQ(binomial(62, 31), 465428353255261088ull);
  EXPECT_FALSE(binomial(200, 100).has_value());
  EXPECT_NEAR(log_binomial(20, 3), std::log(1140.0), 1e-12);
}

// Oracle: every k-subset as a bitmask, in lexicographic order of the sorted index lists.
std::vector<std::vector<int>> subsets_by_mask(int p, int k) {
  std::vector<std::vector<int>> all;
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < p; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    all.push_back(s);
  }
  std::sort(all.begin(), all.end());
  return all;
}

TEST(PatternEnumerator, MatchesBitmaskOracle) {
  for (int p = 1; p <= 9; ++p) {
    for (int k = 0; k <= p; ++k) {
      const auto expected = subsets_by_mask(p, k);
      std::vector<std::vector<int>> got;
      for (const auto& s : enumerate_patterns(p, k)) got.push_back(s.indices());
      ASSERT_EQ(got, expected) << "p=" << p << " k=" << k;
      for (std::size_t r = 0; r < expected.size(); ++r) {
        ASSERT_EQ(unrank_combination(p, k, r), expected[r]);
        ASSERT_EQ((*PatternEnumerator(p, k).at_rank(r)).indices(), expected[r]);
      }
    }
  }
}

TEST(PatternEnumerator, AtRankPastEndIsEnd) {
  const PatternEnumerator e(5, 2);
  EXPECT_TRUE(e.at_rank(10) == e.end());
}

TEST(SparsityPattern, OrderingIsLexicographic) {
  std::set<SparsityPattern> s{make_pattern({0, 3}, 5), make_pattern({0, 2}, 5), make_pattern({1, 2}, 5)};
  EXPECT_EQ(s.begin()->indices(), (std::vector<int>{0, 2}));
}

}  // namespace
}  // namespace sparsepat
