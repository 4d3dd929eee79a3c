#pragma once

#include <array>
#include <string>
#include <vector>

#include "sparsepat/bounds.hpp"

namespace sparsepat {

// The six sparsity / signal-strength scalings compared in the measurement-count table.
enum class Regime {
  linear_inv_k,       // k = Theta(p), b = Theta(1/k)
  linear_logk_k,      // k = Theta(p), b = Theta(log k / k)
  linear_const,       // k = Theta(p), b = Theta(1)
  sublinear_inv_k,    // k = o(p),     b = Theta(1/k)
  sublinear_logk_k,   // k = o(p),     b = Theta(log k / k)
  sublinear_const,    // k = o(p),     b = Theta(1)
};

inline constexpr std::array<Regime, 6> kAllRegimes = {Regime::linear_inv_k,    Regime::linear_logk_k,
                                                      Regime::linear_const,    Regime::sublinear_inv_k,
                                                      Regime::sublinear_logk_k, Regime::sublinear_const};

std::string regime_name(Regime r);  // e.g. "linear-logk-k"
std::string regime_label(Regime r); // e.g. "k=Theta(p), beta_min^2=Theta(log k/k)"
Regime parse_regime(const std::string& name);

// k(p) maps: ceil(linear_fraction * p) and ceil(p^sublinear_exponent).
struct RegimeOptions {
  double linear_fraction = 0.25;
  double sublinear_exponent = 0.5;
  double C = 9.0;
  ConditionVariant variant = ConditionVariant::proof;
};

int regime_k(Regime r, int p, const RegimeOptions& options = {});
double regime_beta_min_sq(Regime r, int k);

// Theta-expression both thresholds are expected to follow.
double regime_predictor(Regime r, int p, int k);
std::string regime_predictor_label(Regime r);

// The expression as printed in the table; differs from regime_predictor only for
// sublinear_inv_k, where the table prints p log(p-k).
double literal_table_predictor(Regime r, int p, int k);

struct RegimeRow {
  int p = 0;
  int k = 0;
  double beta_min_sq = 0.0;
  double sufficient_n = 0.0;
  double necessary_n = 0.0;
  double predictor = 0.0;
  double sufficient_ratio = 0.0;  // sufficient_n / predictor
  double necessary_ratio = 0.0;   // necessary_n / predictor
};

// Throws ValidationError for an empty or non-increasing grid.
std::vector<RegimeRow> regime_table(Regime r, const std::vector<int>& p_grid, const RegimeOptions& options = {});

}  // namespace sparsepat
