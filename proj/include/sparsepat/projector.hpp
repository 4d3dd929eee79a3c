#pragma once

#include "sparsepat/model.hpp"

namespace sparsepat {

inline constexpr double kDefaultRankTolerance = 1e-10;

// Orthogonal projection onto the column space of X_F, held as an orthonormal basis Q (n x r).
class Projector {
public:
  // Zero projector on R^n.
  explicit Projector(int n) : basis_(n, 0) {}
  explicit Projector(Matrix orthonormal_basis) : basis_(std::move(orthonormal_basis)) {}

  int dim() const noexcept { return static_cast<int>(basis_.rows()); }
  int rank() const noexcept { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const noexcept { return basis_; }

  // Q Q^T v
  Vector apply(const Vector& v) const;
  // Dense n x n matrix Q Q^T.
  Matrix dense() const { return basis_ * basis_.transpose(); }

private:
  Matrix basis_;
};

// Column-pivoted Householder QR of X_F; columns whose pivot falls below
// rank_tolerance * (largest column norm) are dropped.
Projector build_projector(const DesignMatrix& design, const SparsityPattern& pattern,
                          double rank_tolerance = kDefaultRankTolerance);
Projector build_projector(const Matrix& columns, double rank_tolerance = kDefaultRankTolerance);

// ||(I - Pi) v||^2
double residual_energy(const Projector& projector, const Vector& v);

}  // namespace sparsepat
