#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sparsepat/pattern.hpp"

namespace sparsepat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// n x p measurement matrix. Entries are finite.
class DesignMatrix {
public:
  explicit DesignMatrix(Matrix entries);

  const Matrix& entries() const noexcept { return entries_; }
  int rows() const noexcept { return static_cast<int>(entries_.rows()); }
  int cols() const noexcept { return static_cast<int>(entries_.cols()); }

  // Columns of `pattern`, in pattern order.
  Matrix submatrix(const SparsityPattern& pattern) const;

private:
  Matrix entries_;
};

// Nonzero entries of beta on its support. No stored value is zero.
class SparseSignal {
public:
  SparseSignal(SparsityPattern pattern, std::vector<double> values);

  // beta_i = beta_min for every i in pattern.
  static SparseSignal flat(SparsityPattern pattern, double beta_min);

  const SparsityPattern& pattern() const noexcept { return pattern_; }
  const std::vector<double>& values() const noexcept { return values_; }
  int cardinality() const noexcept { return pattern_.cardinality(); }
  int ambient_dim() const noexcept { return pattern_.ambient_dim(); }

  double beta_min() const;
  double energy() const;
  // Value at column index i (0 when i is off the support).
  double at(int index) const;
  // sum of squared values over `subset`, which must be contained in the support.
  double energy_on(const SparsityPattern& subset) const;
  // Values restricted to `subset`, in subset order.
  Vector restricted(const SparsityPattern& subset) const;
  Vector dense() const;

private:
  SparsityPattern pattern_;
  std::vector<double> values_;
};

// y = X_T beta_T + eps with unit noise variance.
class ProblemInstance {
public:
  ProblemInstance(DesignMatrix design, SparseSignal signal, Vector observation);

  const DesignMatrix& design() const noexcept { return design_; }
  const SparseSignal& signal() const noexcept { return signal_; }
  const Vector& observation() const noexcept { return observation_; }
  const SparsityPattern& support() const noexcept { return signal_.pattern(); }
  int n() const noexcept { return design_.rows(); }
  int p() const noexcept { return design_.cols(); }
  int k() const noexcept { return signal_.cardinality(); }
  static constexpr double noise_variance = 1.0;

private:
  DesignMatrix design_;
  SparseSignal signal_;
  Vector observation_;
};

// I.i.d. N(0,1) entries; entry (i, j) is draw j*n + i of the seed's design stream.
DesignMatrix gaussian_design(int n, int p, std::uint64_t seed);

// I.i.d. N(0,1) vector from the seed's noise stream.
Vector gaussian_noise(int n, std::uint64_t seed);

// X_T beta_T (the noiseless mean).
Vector signal_mean(const DesignMatrix& design, const SparseSignal& signal);

Vector synthesize_observation(const DesignMatrix& design, const SparseSignal& signal, std::uint64_t noise_seed,
                              bool noiseless = false);

ProblemInstance make_instance(DesignMatrix design, SparseSignal signal, std::uint64_t noise_seed,
                              bool noiseless = false);

}  // namespace sparsepat
