#include "sparsepat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "sparsepat/errors.hpp"

namespace sparsepat {

namespace {

constexpr double kC = ChernoffConstants::c;

void check_pair(const DesignMatrix& design, const SparsityPattern& t_pattern, const SparsityPattern& f_pattern) {
  if (t_pattern.cardinality() != f_pattern.cardinality()) {
    throw ValidationError("|F| = " + std::to_string(f_pattern.cardinality()) + " differs from |T| = " +
                          std::to_string(t_pattern.cardinality()));
  }
  if (t_pattern.ambient_dim() != design.cols() || f_pattern.ambient_dim() != design.cols()) {
    throw ValidationError("pattern ambient dimension does not match design columns " + std::to_string(design.cols()));
  }
}

void check_signal_support(const SparseSignal& signal, const SparsityPattern& t_pattern) {
  if (signal.pattern() != t_pattern) {
    throw ValidationError("t_pattern " + t_pattern.to_string() + " is not the signal support " +
                          signal.pattern().to_string());
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

double log_sum_exp(const std::vector<double>& terms) {
  const double m = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

}  // namespace

double chernoff_objective(double t) { return 2.0 * t * t / (1.0 - 2.0 * t) - t; }

BoundReport BoundReport::from_log(double log_bound, int d, std::optional<double> energy) {
  BoundReport r;
  r.log_bound = log_bound;
  r.probability = log_bound >= 0.0 ? 1.0 : std::exp(log_bound);
  r.d = d;
  r.projection_energy = energy;
  return r;
}

double projection_energy(const DesignMatrix& design, const SparseSignal& signal, const SparsityPattern& t_pattern,
                         const SparsityPattern& f_pattern, double rank_tolerance) {
  check_pair(design, t_pattern, f_pattern);
  const SparsityPattern missed = pattern_difference(t_pattern, f_pattern);
  if (missed.empty()) return 0.0;
  const Vector v = design.submatrix(missed) * signal.restricted(missed);
  return residual_energy(build_projector(design, f_pattern, rank_tolerance), v);
}

Matrix projector_difference(const DesignMatrix& design, const SparsityPattern& t_pattern,
                            const SparsityPattern& f_pattern, double rank_tolerance) {
  return build_projector(design, f_pattern, rank_tolerance).dense() -
         build_projector(design, t_pattern, rank_tolerance).dense();
}

double exact_quadratic_log_mgf(const DesignMatrix& design, const SparseSignal& signal,
                               const SparsityPattern& t_pattern, const SparsityPattern& f_pattern, double t) {
  if (!(std::abs(t) < 0.5)) throw DomainError("exact_quadratic_log_mgf: need |t| < 1/2, got t = " + std::to_string(t));
  check_pair(design, t_pattern, f_pattern);
  check_signal_support(signal, t_pattern);
  if (t == 0.0 || t_pattern == f_pattern) return 0.0;

  const Matrix psi = projector_difference(design, t_pattern, f_pattern);
  const Vector mu = signal_mean(design, signal);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(psi);
  const Vector& lambda = eig.eigenvalues();
  const Vector a = eig.eigenvectors().transpose() * mu;

  // In the eigenbasis every term is diagonal.
  double linear = 0.0;
  double quadratic = 0.0;
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double l = lambda(i);
    const double one_minus = 1.0 - 2.0 * t * l;
    const double a2 = a(i) * a(i);
    linear += l * a2;
    quadratic += l * l * a2 / one_minus;
    log_det += std::log1p(-2.0 * t * l);
  }
  return t * linear + 2.0 * t * t * quadratic - 0.5 * log_det;
}

double chernoff_chain_exponent(double t, double g, int d) {
  if (!(std::abs(t) < 0.5)) throw DomainError("chernoff_chain_exponent: need |t| < 1/2");
  return chernoff_objective(t) * g - 0.5 * d * std::log1p(-4.0 * t * t);
}

BoundReport pairwise_conditional_bound(const DesignMatrix& design, const SparseSignal& signal,
                                       const SparsityPattern& t_pattern, const SparsityPattern& f_pattern) {
  check_pair(design, t_pattern, f_pattern);
  check_signal_support(signal, t_pattern);
  const int d = pattern_difference(t_pattern, f_pattern).cardinality();
  const double g = projection_energy(design, signal, t_pattern, f_pattern);
  return BoundReport::from_log(-kC * g + 0.5 * d, d, g);
}

double chi_square_log_mgf(double t, int dof) {
  if (!(2.0 * t < 1.0)) throw DomainError("chi_square_log_mgf: need 2t < 1, got t = " + std::to_string(t));
  require(dof >= 1, "chi_square_log_mgf: dof must be >= 1");
  return -0.5 * dof * std::log1p(-2.0 * t);
}

BoundReport averaged_pairwise_bound(int n, int k, int d, double miss_energy) {
  require(n > k, "averaged_pairwise_bound: need n > k (n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")");
  require(d >= 1 && d <= k, "averaged_pairwise_bound: need 1 <= d <= k");
  require(miss_energy >= 0.0 && std::isfinite(miss_energy), "averaged_pairwise_bound: miss energy must be >= 0");
  const double log_bound = -0.5 * (n - k) * std::log1p(2.0 * kC * miss_energy) + 0.5 * d;
  return BoundReport::from_log(log_bound, d);
}

BoundReport union_error_bound_sum(int n, int p, int k, double beta_min_sq) {
  require(k >= 1 && p > k, "union_error_bound_sum: need p > k >= 1");
  require(n > k, "union_error_bound_sum: need n > k");
  require(beta_min_sq > 0.0 && std::isfinite(beta_min_sq), "union_error_bound_sum: need beta_min^2 > 0");
  std::vector<double> terms;
  for (int d = 1; d <= std::min(k, p - k); ++d) {
    terms.push_back(log_binomial(k, d) + log_binomial(p - k, d) -
                    0.5 * (n - k) * std::log1p(2.0 * kC * d * beta_min_sq) + 0.5 * d);
  }
  return BoundReport::from_log(log_sum_exp(terms), 0);
}

std::string to_string(ConditionVariant v) {
  switch (v) {
    case ConditionVariant::proof: return "proof";
    case ConditionVariant::statement: return "statement";
    case ConditionVariant::corollary: return "corollary";
  }
  return "proof";
}

ConditionVariant parse_condition_variant(const std::string& name) {
  if (name == "proof") return ConditionVariant::proof;
  if (name == "statement") return ConditionVariant::statement;
  if (name == "corollary") return ConditionVariant::corollary;
  throw ValidationError("unknown variant '" + name + "' (expected proof, statement or corollary)");
}

bool convexity_condition(int n, int k, double beta_min_sq) {
  const double b = beta_min_sq;
  return (n - k) * b > 4.0 * (1.0 + k * b) * (1.0 + k * b) / (k * b);
}

FCurve f_curve(double d, int n, int p, int k, double beta_min_sq) {
  if (!(d > 0.0)) throw DomainError("f_curve: need d > 0, got d = " + std::to_string(d));
  require(p > k && k >= 1, "f_curve: need p > k >= 1");
  const double b = beta_min_sq;
  const double m = n - k;
  const double s = 1.0 + 2.0 * kC * d * b;
  const double log_ratio = std::log(static_cast<double>(k) * (p - k) / (d * d));
  FCurve out;
  out.f = d * (2.5 + log_ratio) - 0.5 * m * std::log(s);
  // d/dd of -2 d log d contributes the extra -2 relative to 5/2.
  out.f_prime = 0.5 + log_ratio - kC * b * m / s;
  out.f_second = -2.0 / d + 2.0 * kC * kC * b * b * m / (s * s);
  return out;
}

bool f_convex_on_range(int n, int k, double beta_min_sq) {
  const double b = beta_min_sq;
  const double lhs = (n - k) * kC * kC * b * b;
  const auto rhs = [&](double d) { return (1.0 + 2.0 * kC * d * b) * (1.0 + 2.0 * kC * d * b) / d; };
  return lhs > std::max(rhs(1.0), rhs(static_cast<double>(k)));
}

double sufficient_sample_size(int p, int k, double beta_min_sq, double C, ConditionVariant variant) {
  require(k >= 1 && p > 2 * k, "sufficient_sample_size: need p > 2k >= 2");
  require(beta_min_sq > 0.0, "sufficient_sample_size: need beta_min^2 > 0");
  require(C > 0.0, "sufficient_sample_size: need C > 0");
  const double b = beta_min_sq;
  const double pk = p - k;
  const double kd = k;
  switch (variant) {
    case ConditionVariant::proof:
      return kd + C * std::max(std::log(pk) / std::log1p(b), (kd * std::log(pk / kd) + kd) / std::log1p(kd * b));
    case ConditionVariant::statement:
      return kd + C * std::max(std::log(kd * pk) / std::log1p(b),
                               (kd * std::log(pk / kd) + std::log(kd)) / std::log1p(kd * b));
    case ConditionVariant::corollary:
      return C * std::max({std::log(pk) / std::log1p(b), kd * std::log(p / kd) / std::log1p(kd * b), kd});
  }
  return 0.0;
}

double NecessaryTerms::threshold() const { return std::max({f1, f2, floor}); }

NecessaryTerms necessary_terms(int p, int k, double beta_min_sq) {
  require(k >= 1 && p > k, "necessary_sample_size: need p > k >= 1");
  const double b = beta_min_sq;
  const double den1 = 0.5 * std::log1p(k * b * (1.0 - static_cast<double>(k) / p));
  const double den2 = 0.5 * std::log1p(b * (1.0 - 1.0 / (p - k + 1.0)));
  if (!(den1 > 0.0) || !(den2 > 0.0) || !std::isfinite(den1) || !std::isfinite(den2)) {
    throw DomainError("necessary_sample_size: degenerate denominator (beta_min^2 (1 - k/p) must be > 0)");
  }
  NecessaryTerms out;
  out.f1 = (log_binomial(p, k) - 1.0) / den1;
  out.f2 = (std::log(p - k + 1.0) - 1.0) / den2;
  out.floor = k - 1.0;
  return out;
}

double necessary_sample_size(int p, int k, double beta_min_sq) { return necessary_terms(p, k, beta_min_sq).threshold(); }

BoundReport union_error_bound_closed_form(int n, int p, int k, double beta_min_sq, double C,
                                          ConditionVariant variant) {
  require(k >= 1, "union_error_bound_closed_form: need k >= 1");
  require(beta_min_sq > 0.0, "union_error_bound_closed_form: need beta_min^2 > 0");
  if (!(p > 2 * k)) {
    throw PreconditionError("p > 2k", "hypothesis p > 2k fails: p = " + std::to_string(p) + ", k = " + std::to_string(k));
  }
  if (!convexity_condition(n, k, beta_min_sq)) {
    throw PreconditionError("(n-k) beta_min^2 > 4(1+k beta_min^2)^2/(k beta_min^2)",
                            "convexity hypothesis (n-k) beta_min^2 > 4(1+k beta_min^2)^2/(k beta_min^2) fails");
  }
  const double threshold = sufficient_sample_size(p, k, beta_min_sq, C, variant);
  if (!(n > threshold)) {
    throw PreconditionError(variant == ConditionVariant::corollary ? "n > C max{...}" : "n - k > C max{...}",
                            "sample-size hypothesis fails: n = " + std::to_string(n) + " must exceed " +
                                std::to_string(threshold) + " (" + to_string(variant) + " variant)");
  }
  const double B = (C - 5.0) / 2.0;
  const double pk = p - k;
  const double log_bound =
      std::log(static_cast<double>(k)) + 2.5 + std::max(-B * std::log(pk), -k * B * (1.0 + std::log(pk / k)));
  return BoundReport::from_log(log_bound, 0);
}

ConditionReport check_conditions(int n, int p, int k, double beta_min_sq, double C, ConditionVariant variant) {
  ConditionReport r;
  r.n = n;
  r.p = p;
  r.k = k;
  r.beta_min_sq = beta_min_sq;
  r.C = C;
  r.sufficient_threshold = sufficient_sample_size(p, k, beta_min_sq, C, variant);
  r.necessary_threshold = necessary_sample_size(p, k, beta_min_sq);
  r.convexity_ok = n > k && convexity_condition(n, k, beta_min_sq);
  r.sufficient_ok = n > r.sufficient_threshold;
  r.necessary_ok = n > r.necessary_threshold;
  return r;
}

}  // namespace sparsepat
