#include <gtest/gtest.h>

#include <cmath>

#include "sparsepat/errors.hpp"
#include "sparsepat/regimes.hpp"

namespace sparsepat {
namespace {

TEST(Regimes, NamesRoundTrip) {
  for (Regime r : kAllRegimes) EXPECT_EQ(parse_regime(regime_name(r)), r);
  EXPECT_THROW(parse_regime("quadratic"), ValidationError);
}

TEST(Regimes, SparsityScaling) {
  EXPECT_EQ(regime_k(Regime::linear_const, 1024), 256);
  EXPECT_EQ(regime_k(Regime::sublinear_const, 1024), 32);
  EXPECT_DOUBLE_EQ(regime_beta_min_sq(Regime::linear_inv_k, 8), 1.0 / 8);
  EXPECT_DOUBLE_EQ(regime_beta_min_sq(Regime::sublinear_logk_k, 16), std::log(16.0) / 16);
  EXPECT_DOUBLE_EQ(regime_beta_min_sq(Regime::sublinear_const, 16), 1.0);
}

TEST(Regimes, ThresholdsGrowWithP) {
  const std::vector<int> grid{64, 128, 256, 512, 1024, 2048, 4096};
  for (Regime r : kAllRegimes) {
    const auto rows = regime_table(r, grid);
    ASSERT_EQ(rows.size(), grid.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
      EXPECT_GT(rows[i].sufficient_n, rows[i - 1].sufficient_n) << regime_name(r);
      EXPECT_GT(rows[i].necessary_n, rows[i - 1].necessary_n) << regime_name(r);
    }
    for (const auto& row : rows) {
      EXPECT_LE(row.necessary_n, row.sufficient_n);
      EXPECT_NEAR(row.sufficient_ratio, row.sufficient_n / row.predictor, 1e-12);
    }
  }
}

TEST(Regimes, GridValidation) {
  EXPECT_THROW(regime_table(Regime::linear_const, {}), ValidationError);
  EXPECT_THROW(regime_table(Regime::linear_const, {128, 64}), ValidationError);
}

}  // namespace
}  // namespace sparsepat
