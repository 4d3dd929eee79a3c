#include "sparsepat/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sparsepat/errors.hpp"
#include "sparsepat/philox.hpp"

namespace sparsepat {

DesignMatrix::DesignMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (!entries_.allFinite()) throw ValidationError("design matrix has non-finite entries");
}

Matrix DesignMatrix::submatrix(const SparsityPattern& pattern) const {
  if (pattern.ambient_dim() != cols()) {
    throw ValidationError("pattern ambient dimension " + std::to_string(pattern.ambient_dim()) +
                          " does not match design columns " + std::to_string(cols()));
  }
  Matrix out(entries_.rows(), pattern.cardinality());
  for (int j = 0; j < pattern.cardinality(); ++j) out.col(j) = entries_.col(pattern[static_cast<std::size_t>(j)]);
  return out;
}

SparseSignal::SparseSignal(SparsityPattern pattern, std::vector<double> values)
    : pattern_(std::move(pattern)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != pattern_.cardinality()) {
    throw ValidationError("signal has " + std::to_string(values_.size()) + " values for a support of size " +
                          std::to_string(pattern_.cardinality()));
  }
  for (double v : values_) {
    if (v == 0.0 || !std::isfinite(v)) throw ValidationError("signal values on the support must be finite and nonzero");
  }
}

SparseSignal SparseSignal::flat(SparsityPattern pattern, double beta_min) {
  std::vector<double> values(static_cast<std::size_t>(pattern.cardinality()), beta_min);
  return SparseSignal(std::move(pattern), std::move(values));
}

double SparseSignal::beta_min() const {
  if (values_.empty()) return std::numeric_limits<double>::infinity();
  double m = std::abs(values_.front());
  for (double v : values_) m = std::min(m, std::abs(v));
  return m;
}

double SparseSignal::energy() const {
  double e = 0.0;
  for (double v : values_) e += v * v;
  return e;
}

double SparseSignal::at(int index) const {
  const auto& idx = pattern_.indices();
  const auto it = std::lower_bound(idx.begin(), idx.end(), index);
  if (it == idx.end() || *it != index) return 0.0;
  return values_[static_cast<std::size_t>(it - idx.begin())];
}

double SparseSignal::energy_on(const SparsityPattern& subset) const {
  double e = 0.0;
  for (int i : subset.indices()) {
    if (!pattern_.contains(i)) throw ValidationError("energy_on: index " + std::to_string(i) + " is off the support");
    const double v = at(i);
    e += v * v;
  }
  return e;
}

Vector SparseSignal::restricted(const SparsityPattern& subset) const {
  Vector out(subset.cardinality());
  for (int j = 0; j < subset.cardinality(); ++j) out(j) = at(subset[static_cast<std::size_t>(j)]);
  return out;
}

Vector SparseSignal::dense() const {
  Vector out = Vector::Zero(pattern_.ambient_dim());
  for (int j = 0; j < cardinality(); ++j) out(pattern_[static_cast<std::size_t>(j)]) = values_[static_cast<std::size_t>(j)];
  return out;
}

ProblemInstance::ProblemInstance(DesignMatrix design, SparseSignal signal, Vector observation)
    : design_(std::move(design)), signal_(std::move(signal)), observation_(std::move(observation)) {
  if (signal_.ambient_dim() != design_.cols()) {
    throw ValidationError("signal dimension " + std::to_string(signal_.ambient_dim()) +
                          " does not match design columns " + std::to_string(design_.cols()));
  }
  if (observation_.size() != design_.rows()) {
    throw ValidationError("observation length " + std::to_string(observation_.size()) +
                          " does not match design rows " + std::to_string(design_.rows()));
  }
}

DesignMatrix gaussian_design(int n, int p, std::uint64_t seed) {
  if (n < 1 || p < 1) throw ValidationError("gaussian_design: need n, p >= 1");
  const CounterRng rng(seed, Stream::design);
  Matrix x(n, p);
  double* data = x.data();  // column-major: entry (i, j) at j*n + i
  rng.fill_normals(0, static_cast<std::size_t>(n) * static_cast<std::size_t>(p),
                   [data](std::size_t i, double v) { data[i] = v; });
  return DesignMatrix(std::move(x));
}

Vector gaussian_noise(int n, std::uint64_t seed) {
  const CounterRng rng(seed, Stream::noise);
  Vector eps(n);
  rng.fill_normals(0, static_cast<std::size_t>(n), [&eps](std::size_t i, double v) { eps(static_cast<Eigen::Index>(i)) = v; });
  return eps;
}

Vector signal_mean(const DesignMatrix& design, const SparseSignal& signal) {
  if (signal.ambient_dim() != design.cols()) {
    throw ValidationError("signal dimension " + std::to_string(signal.ambient_dim()) +
                          " does not match design columns " + std::to_string(design.cols()));
  }
  return design.submatrix(signal.pattern()) * signal.restricted(signal.pattern());
}

Vector synthesize_observation(const DesignMatrix& design, const SparseSignal& signal, std::uint64_t noise_seed,
                              bool noiseless) {
  Vector y = signal_mean(design, signal);
  if (!noiseless) y += gaussian_noise(design.rows(), noise_seed);
  return y;
}

ProblemInstance make_instance(DesignMatrix design, SparseSignal signal, std::uint64_t noise_seed, bool noiseless) {
  Vector y = synthesize_observation(design, signal, noise_seed, noiseless);
  return ProblemInstance(std::move(design), std::move(signal), std::move(y));
}

}  // namespace sparsepat
