#include "sparsepat/projector.hpp"

#include <string>

#include "sparsepat/errors.hpp"

namespace sparsepat {

Vector Projector::apply(const Vector& v) const {
  if (v.size() != basis_.rows()) {
    throw ValidationError("projector: vector length " + std::to_string(v.size()) + " does not match dimension " +
                          std::to_string(basis_.rows()));
  }
  return basis_ * (basis_.transpose() * v);
}

Projector build_projector(const Matrix& columns, double rank_tolerance) {
  const auto n = columns.rows();
  if (columns.cols() == 0) return Projector(static_cast<int>(n));
  if (columns.colwise().norm().maxCoeff() == 0.0) return Projector(static_cast<int>(n));
  Eigen::ColPivHouseholderQR<Matrix> qr(columns);
  // Eigen's threshold is relative to the largest pivot, which is the largest column norm.
  qr.setThreshold(rank_tolerance);
  const auto r = qr.rank();
  Matrix q = qr.householderQ() * Matrix::Identity(n, r);
  return Projector(std::move(q));
}

Projector build_projector(const DesignMatrix& design, const SparsityPattern& pattern, double rank_tolerance) {
  return build_projector(design.submatrix(pattern), rank_tolerance);
}

double residual_energy(const Projector& projector, const Vector& v) {
  return (v - projector.apply(v)).squaredNorm();
}

}  // namespace sparsepat
