#pragma once

// Error-probability bounds for the exhaustive decoder and the sample-size
// conditions derived from them. Everything is evaluated in the natural-log
// domain; probabilities are clamped to [0, 1] only when reported.

#include <numbers>
#include <optional>
#include <string>

#include "sparsepat/model.hpp"
#include "sparsepat/projector.hpp"

namespace sparsepat {

// Minimizer of 2t^2/(1-2t) - t over |t| < 1/2 and the resulting exponent constant.
struct ChernoffConstants {
  static constexpr double c = (3.0 - 2.0 * std::numbers::sqrt2) / 2.0;
  static constexpr double t_star = (1.0 - std::numbers::sqrt2 / 2.0) / 2.0;
  static constexpr double min_value = std::numbers::sqrt2 - 1.5;
};

// The function minimized to obtain the constants: 2t^2/(1-2t) - t.
double chernoff_objective(double t);

struct BoundReport {
  double log_bound = 0.0;
  double probability = 1.0;  // min(1, exp(log_bound))
  int d = 0;
  std::optional<double> projection_energy;

  static BoundReport from_log(double log_bound, int d, std::optional<double> energy = std::nullopt);
};

// ||(I - Pi_F) X_{T-F} beta_{T-F}||^2, the part of the missed signal invisible to span(X_F).
double projection_energy(const DesignMatrix& design, const SparseSignal& signal, const SparsityPattern& t_pattern,
                         const SparsityPattern& f_pattern, double rank_tolerance = kDefaultRankTolerance);

// Psi = Pi_F - Pi_T as a dense n x n matrix.
Matrix projector_difference(const DesignMatrix& design, const SparsityPattern& t_pattern,
                            const SparsityPattern& f_pattern, double rank_tolerance = kDefaultRankTolerance);

// log E[exp(t Z_F)] for y ~ N(X_T beta_T, I), evaluated through the eigendecomposition of Psi:
//   t mu'Psi mu + 2t^2 mu'Psi(I-2t Psi)^{-1}Psi mu - 1/2 log det(I - 2t Psi).
// Throws DomainError when |t| >= 1/2; t_pattern must be the signal's support.
double exact_quadratic_log_mgf(const DesignMatrix& design, const SparseSignal& signal,
                               const SparsityPattern& t_pattern, const SparsityPattern& f_pattern, double t);

// [2t^2/(1-2t) - t] g - (d/2) log(1 - 4t^2): the relaxed exponent after the eigenvalue bounds.
// Valid as an upper bound on the exact log-MGF for 0 <= t < 1/2.
double chernoff_chain_exponent(double t, double g, int d);

// exp(-c g + d/2) with g = projection_energy, d = |T - F|.
BoundReport pairwise_conditional_bound(const DesignMatrix& design, const SparseSignal& signal,
                                       const SparsityPattern& t_pattern, const SparsityPattern& f_pattern);

// -(dof/2) log(1 - 2t). Throws DomainError when 2t >= 1.
double chi_square_log_mgf(double t, int dof);

// Gaussian-ensemble average of the pairwise bound:
// exp(-((n-k)/2) log(1 + 2c miss_energy) + d/2), miss_energy = ||beta_{T-F}||^2.
BoundReport averaged_pairwise_bound(int n, int k, int d, double miss_energy);

// sum_{d=1..k} C(k,d) C(p-k,d) exp(-((n-k)/2) log(1 + 2c d b) + d/2), via log-sum-exp.
BoundReport union_error_bound_sum(int n, int p, int k, double beta_min_sq);

// Which reading of the sample-size display to use.
enum class ConditionVariant {
  proof,      // n-k > C max{log(p-k)/log(1+b), (k log((p-k)/k) + k)/log(1+kb)}
  statement,  // n-k > C max{log(k(p-k))/log(1+b), (k log((p-k)/k) + log k)/log(1+kb)}
  corollary,  // n > C max{log(p-k)/log(1+b), k log(p/k)/log(1+kb), k}
};

std::string to_string(ConditionVariant v);
ConditionVariant parse_condition_variant(const std::string& name);

// k e^{5/2} max{(p-k)^{-B}, (e(p-k)/k)^{-kB}}, B = (C-5)/2.
// Throws PreconditionError naming the failed hypothesis: "p > 2k", the
// convexity inequality, or the sample-size inequality.
BoundReport union_error_bound_closed_form(int n, int p, int k, double beta_min_sq, double C,
                                          ConditionVariant variant = ConditionVariant::proof);

// (n-k) b > 4 (1 + k b)^2 / (k b), strict.
bool convexity_condition(int n, int k, double beta_min_sq);

struct FCurve {
  double f = 0.0;
  double f_prime = 0.0;
  double f_second = 0.0;
};

// f(d) = d[5/2 + log(k(p-k)/d^2)] - ((n-k)/2) log(1 + 2c d b) with its first two derivatives.
// Throws DomainError when d <= 0.
FCurve f_curve(double d, int n, int p, int k, double beta_min_sq);

// Exact test for f'' > 0 on all of [1, k]: (n-k) c^2 b^2 > (1 + 2c d b)^2 / d at d = 1 and d = k
// (the right side is convex in d, so its maximum on [1, k] sits at an endpoint).
bool f_convex_on_range(int n, int k, double beta_min_sq);

// Smallest n the chosen sample-size display admits, as a real threshold (n must exceed it).
double sufficient_sample_size(int p, int k, double beta_min_sq, double C,
                              ConditionVariant variant = ConditionVariant::proof);

struct NecessaryTerms {
  double f1 = 0.0;
  double f2 = 0.0;
  double floor = 0.0;  // k - 1
  double threshold() const;
};

NecessaryTerms necessary_terms(int p, int k, double beta_min_sq);

// max{f1, f2, k-1}. Throws DomainError on vanishing denominators.
double necessary_sample_size(int p, int k, double beta_min_sq);

struct ConditionReport {
  int n = 0;
  int p = 0;
  int k = 0;
  double beta_min_sq = 0.0;
  double C = 0.0;
  double sufficient_threshold = 0.0;
  double necessary_threshold = 0.0;
  bool convexity_ok = false;
  bool sufficient_ok = false;  // n > sufficient_threshold
  bool necessary_ok = false;   // n > necessary_threshold
};

ConditionReport check_conditions(int n, int p, int k, double beta_min_sq, double C,
                                 ConditionVariant variant = ConditionVariant::proof);

}  // namespace sparsepat
