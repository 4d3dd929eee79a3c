#include "sparsepat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "sparsepat/bounds.hpp"
#include "sparsepat/philox.hpp"

namespace sparsepat {

namespace {

struct PairInstance {
  DesignMatrix design;
  SparseSignal signal;
  SparsityPattern f;
};

// Uniform integer in [lo, hi].
int uniform_int(const CounterRng& rng, std::uint64_t& draw, int lo, int hi) {
  return lo + std::min(hi - lo, static_cast<int>(rng.uniform(draw++) * (hi - lo + 1)));
}

SparsityPattern random_subset(const CounterRng& rng, std::uint64_t& draw, int p, int k) {
  std::vector<int> all(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) all[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    const int j = uniform_int(rng, draw, i, p - 1);
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
  }
  all.resize(static_cast<std::size_t>(k));
  return SparsityPattern(std::move(all), p);
}

PairInstance random_pair_instance(std::uint64_t seed, std::uint64_t index, int max_n, int max_k) {
  const CounterRng rng(derive_seed(seed, Stream::oracle, index), Stream::oracle);
  std::uint64_t draw = 0;
  const int k = uniform_int(rng, draw, 1, max_k);
  const int n = uniform_int(rng, draw, k + 1, max_n);
  const int p = uniform_int(rng, draw, k + 1, k + 8);
  const SparsityPattern t = random_subset(rng, draw, p, k);
  const SparsityPattern f = random_subset(rng, draw, p, k);
  std::vector<double> beta;
  for (int i = 0; i < k; ++i) {
    const double mag = 0.5 + 1.5 * rng.uniform(draw++);
    beta.push_back(rng.uniform(draw++) < 0.5 ? -mag : mag);
  }
  return {gaussian_design(n, p, derive_seed(seed, Stream::design, index)), SparseSignal(t, beta), f};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult check_chernoff_constants(bool flip) {
  CheckResult r{"chernoff-constants", false, 0.0, 1e-9, {}};
  constexpr int kGrid = 1'000'000;
  double best = 1e300;
  double best_t = 0.0;
  for (int i = 1; i < kGrid; ++i) {
    const double t = -0.5 + static_cast<double>(i) / kGrid;
    const double v = chernoff_objective(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  const double c = flip ? -ChernoffConstants::c : ChernoffConstants::c;
  const double min_err = std::abs(best - ChernoffConstants::min_value);
  const double t_err = std::abs(best_t - ChernoffConstants::t_star);
  const double c_err = std::abs(c + ChernoffConstants::min_value);
  const double self_err = std::abs(chernoff_objective(ChernoffConstants::t_star) - ChernoffConstants::min_value);
  r.residual = std::max({min_err, c_err, self_err});
  r.passed = min_err <= 1e-9 && t_err <= 1e-4 && c_err <= 1e-14 && self_err <= 1e-14;
  r.detail = "grid min " + fmt(best) + " at t=" + fmt(best_t) + "; |c + min| = " + fmt(c_err);
  return r;
}

CheckResult check_eigen_pairs(const VerifyOptions& o) {
  CheckResult r{"eigen-pairs", true, 0.0, 1e-8, {}};
  int worst_pairs = 0;
  double worst_abs = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const auto inst = random_pair_instance(o.seed, static_cast<std::uint64_t>(i), 32, 4);
    const Matrix psi = projector_difference(inst.design, inst.signal.pattern(), inst.f);
    const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(psi, Eigen::EigenvaluesOnly).eigenvalues();
    std::vector<double> pos;
    std::vector<double> neg;
    for (Eigen::Index j = 0; j < ev.size(); ++j) {
      if (ev(j) > 1e-8) pos.push_back(ev(j));
      if (ev(j) < -1e-8) neg.push_back(-ev(j));
      worst_abs = std::max(worst_abs, std::abs(ev(j)));
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    const int d = pattern_difference(inst.signal.pattern(), inst.f).cardinality();
    worst_pairs = std::max(worst_pairs, static_cast<int>(pos.size()) - d);
    if (pos.size() != neg.size() || static_cast<int>(pos.size()) > d || worst_abs > 1.0 + 1e-10) {
      r.passed = false;
      r.detail = "instance " + std::to_string(i) + " breaks the pairing";
    }
    for (std::size_t j = 0; j < std::min(pos.size(), neg.size()); ++j) {
      r.residual = std::max(r.residual, std::abs(pos[j] - neg[j]));
    }
  }
  if (r.residual > r.tolerance) r.passed = false;
  if (r.detail.empty()) r.detail = "max |lambda| = " + fmt(worst_abs);
  return r;
}

CheckResult check_identities(const VerifyOptions& o) {
  CheckResult r{"projection-identities", true, 0.0, 1e-9, {}};
  for (int i = 0; i < o.instances; ++i) {
    const auto inst = random_pair_instance(o.seed + 1, static_cast<std::uint64_t>(i), 32, 4);
    const auto& t = inst.signal.pattern();
    const Matrix psi = projector_difference(inst.design, t, inst.f);
    const Vector mu = signal_mean(inst.design, inst.signal);
    const double g = projection_energy(inst.design, inst.signal, t, inst.f);
    const double first = mu.dot(psi * mu);
    const double second = (psi * mu).squaredNorm();
    const double scale = std::max(g, 1.0);
    r.residual = std::max({r.residual, std::abs(first + g) / scale, std::abs(second - g) / scale});
  }
  r.passed = r.residual <= r.tolerance;
  r.detail = "relative deviation of mu'Psi mu = -g and mu'Psi^2 mu = g";
  return r;
}

CheckResult check_exact_mgf(const VerifyOptions& o) {
  CheckResult r{"exact-vs-sampled-mgf", false, 0.0, 0.02, {}};
  const int n = 6;
  const int p = 4;
  const SparsityPattern t = make_pattern({0, 1}, p);
  const SparsityPattern f = make_pattern({0, 2}, p);
  const DesignMatrix x = gaussian_design(n, p, o.seed);
  const SparseSignal signal = SparseSignal::flat(t, 2.0);
  const double ts = ChernoffConstants::t_star;
  const double exact = exact_quadratic_log_mgf(x, signal, t, f, ts);

  const Vector mu = signal_mean(x, signal);
  const Matrix psi = projector_difference(x, t, f);
  const CounterRng rng(o.seed, Stream::oracle);
  double sum = 0.0;
  Vector y(n);
  for (std::int64_t s = 0; s < o.mgf_samples; ++s) {
    rng.fill_normals(static_cast<std::uint64_t>(s) * n, n,
                     [&](std::size_t i, double v) { y(static_cast<Eigen::Index>(i)) = mu(static_cast<Eigen::Index>(i)) + v; });
    sum += std::exp(ts * y.dot(psi * y));
  }
  const double sampled = std::log(sum / static_cast<double>(o.mgf_samples));
  r.residual = std::abs(sampled - exact) / std::abs(exact);
  r.passed = r.residual <= r.tolerance;
  r.detail = "exact " + fmt(exact) + ", sampled " + fmt(sampled);
  return r;
}

CheckResult check_chi_square_mgf(const VerifyOptions& o) {
  CheckResult r{"chi-square-mgf", false, 0.0, 0.01, {}};
  const int dof = 5;
  const double t = -ChernoffConstants::c * 1.0;
  const CounterRng rng(o.seed + 7, Stream::oracle);
  double sum = 0.0;
  for (std::int64_t s = 0; s < o.mgf_samples; ++s) {
    double w = 0.0;
    rng.fill_normals(static_cast<std::uint64_t>(s) * dof, dof, [&w](std::size_t, double v) { w += v * v; });
    sum += std::exp(t * w);
  }
  const double sampled = std::log(sum / static_cast<double>(o.mgf_samples));
  const double exact = chi_square_log_mgf(t, dof);
  r.residual = std::abs(sampled - exact) / std::abs(exact);
  r.passed = r.residual <= r.tolerance;
  r.detail = "exact " + fmt(exact) + ", sampled " + fmt(sampled);
  return r;
}

CheckResult check_f_curve(const VerifyOptions& o) {
  CheckResult r{"f-curve-derivatives", false, 0.0, 1e-6, {}};
  const CounterRng rng(o.seed + 11, Stream::oracle);
  std::uint64_t draw = 0;
  const double h = 1e-5;
  for (int i = 0; i < o.instances; ++i) {
    const int k = uniform_int(rng, draw, 1, 64);
    const int n = uniform_int(rng, draw, k + 1, 10 * k + 200);
    const int p = uniform_int(rng, draw, k + 1, 10 * k + 100);
    const double b = std::exp(-3.0 + 6.0 * rng.uniform(draw++));
    const double d = 0.5 + (k - 0.5) * rng.uniform(draw++);
    const FCurve at = f_curve(d, n, p, k, b);
    const double fd1 = (f_curve(d + h, n, p, k, b).f - f_curve(d - h, n, p, k, b).f) / (2 * h);
    const double fd2 = (f_curve(d + h, n, p, k, b).f_prime - f_curve(d - h, n, p, k, b).f_prime) / (2 * h);
    r.residual = std::max({r.residual, std::abs(fd1 - at.f_prime) / std::max(std::abs(at.f_prime), 1.0),
                           std::abs(fd2 - at.f_second) / std::max(std::abs(at.f_second), 1.0)});
  }
  r.passed = r.residual <= r.tolerance;
  r.detail = "central differences, step 1e-5";
  return r;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  return {check_chernoff_constants(options.flip_c_sign), check_eigen_pairs(options), check_identities(options),
          check_exact_mgf(options),   check_chi_square_mgf(options), check_f_curve(options)};
}

}  // namespace sparsepat
