#include "sparsepat/regimes.hpp"

#include <algorithm>
#include <cmath>

#include "sparsepat/errors.hpp"

namespace sparsepat {

namespace {

bool is_linear(Regime r) {
  return r == Regime::linear_inv_k || r == Regime::linear_logk_k || r == Regime::linear_const;
}

}  // namespace

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::linear_inv_k: return "linear-inv-k";
    case Regime::linear_logk_k: return "linear-logk-k";
    case Regime::linear_const: return "linear-const";
    case Regime::sublinear_inv_k: return "sublinear-inv-k";
    case Regime::sublinear_logk_k: return "sublinear-logk-k";
    case Regime::sublinear_const: return "sublinear-const";
  }
  return {};
}

std::string regime_label(Regime r) {
  const std::string sparsity = is_linear(r) ? "k=Theta(p)" : "k=o(p)";
  switch (r) {
    case Regime::linear_inv_k:
    case Regime::sublinear_inv_k: return sparsity + ", beta_min^2=Theta(1/k)";
    case Regime::linear_logk_k:
    case Regime::sublinear_logk_k: return sparsity + ", beta_min^2=Theta(log k/k)";
    case Regime::linear_const:
    case Regime::sublinear_const: return sparsity + ", beta_min^2=Theta(1)";
  }
  return {};
}

Regime parse_regime(const std::string& name) {
  for (Regime r : kAllRegimes) {
    if (regime_name(r) == name) return r;
  }
  throw ValidationError("unknown regime '" + name +
                        "' (expected linear-inv-k, linear-logk-k, linear-const, sublinear-inv-k, "
                        "sublinear-logk-k or sublinear-const)");
}

int regime_k(Regime r, int p, const RegimeOptions& options) {
  const double k = is_linear(r) ? std::ceil(options.linear_fraction * p)
                                : std::ceil(std::pow(static_cast<double>(p), options.sublinear_exponent));
  return static_cast<int>(k);
}

double regime_beta_min_sq(Regime r, int k) {
  switch (r) {
    case Regime::linear_inv_k:
    case Regime::sublinear_inv_k: return 1.0 / k;
    case Regime::linear_logk_k:
    case Regime::sublinear_logk_k: return std::log(static_cast<double>(k)) / k;
    case Regime::linear_const:
    case Regime::sublinear_const: return 1.0;
  }
  return 0.0;
}

double regime_predictor(Regime r, int p, int k) {
  const double pd = p;
  const double kd = k;
  switch (r) {
    case Regime::linear_inv_k: return pd * std::log(pd);
    case Regime::linear_logk_k:
    case Regime::linear_const: return pd;
    case Regime::sublinear_inv_k: return kd * std::log(pd - kd);
    case Regime::sublinear_logk_k: return kd * std::log(pd / kd) / std::log(std::log(kd));
    case Regime::sublinear_const: return std::max(kd * std::log(pd / kd) / std::log(kd), kd);
  }
  return 0.0;
}

std::string regime_predictor_label(Regime r) {
  switch (r) {
    case Regime::linear_inv_k: return "p log p";
    case Regime::linear_logk_k:
    case Regime::linear_const: return "p";
    case Regime::sublinear_inv_k: return "k log(p-k)";
    case Regime::sublinear_logk_k: return "k log(p/k) / log log k";
    case Regime::sublinear_const: return "max{k log(p/k) / log k, k}";
  }
  return {};
}

double literal_table_predictor(Regime r, int p, int k) {
  if (r == Regime::sublinear_inv_k) return p * std::log(static_cast<double>(p - k));
  return regime_predictor(r, p, k);
}

std::vector<RegimeRow> regime_table(Regime r, const std::vector<int>& p_grid, const RegimeOptions& options) {
  if (p_grid.empty()) throw ValidationError("regime_table: empty p grid");
  if (!std::is_sorted(p_grid.begin(), p_grid.end()) ||
      std::adjacent_find(p_grid.begin(), p_grid.end()) != p_grid.end()) {
    throw ValidationError("regime_table: p grid must be strictly increasing");
  }
  std::vector<RegimeRow> rows;
  rows.reserve(p_grid.size());
  for (int p : p_grid) {
    RegimeRow row;
    row.p = p;
    row.k = regime_k(r, p, options);
    row.beta_min_sq = regime_beta_min_sq(r, row.k);
    if (!(row.beta_min_sq > 0.0)) {
      throw ValidationError("regime_table: beta_min^2 vanishes at p = " + std::to_string(p) + " (k = " +
                            std::to_string(row.k) + ")");
    }
    row.sufficient_n = sufficient_sample_size(p, row.k, row.beta_min_sq, options.C, options.variant);
    row.necessary_n = necessary_sample_size(p, row.k, row.beta_min_sq);
    row.predictor = regime_predictor(r, p, row.k);
    if (!(row.predictor > 0.0) || !std::isfinite(row.predictor)) {
      throw ValidationError("regime_table: predictor is not positive at p = " + std::to_string(p));
    }
    row.sufficient_ratio = row.sufficient_n / row.predictor;
    row.necessary_ratio = row.necessary_n / row.predictor;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sparsepat
