#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sparsepat {

struct VerifyOptions {
  std::uint64_t seed = 20091;
  int instances = 100;
  std::int64_t mgf_samples = 1'000'000;
  // Negative control: use -c in place of c so the constant check must fail.
  bool flip_c_sign = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;   // worst observed deviation
  double tolerance = 0.0;  // what it was compared against
  std::string detail;
};

// Seeded self-checks of the analytic machinery against independent numerics:
// Chernoff constants by grid search, eigenvalue pairing of Pi_F - Pi_T, the
// mu'Psi mu / mu'Psi^2 mu identities, exact vs sampled log-MGF, chi-square
// MGF by sampling, and f-curve derivatives by finite differences.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace sparsepat
