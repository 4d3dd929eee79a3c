#pragma once

#include <stdexcept>
#include <string>

namespace sparsepat {

// Bad arguments: wrong cardinality, mismatched dimensions, malformed patterns.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the domain of a formula (|t| >= 1/2, d <= 0, beta_min^2 = 0).
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A stated hypothesis of an analytic bound does not hold. hypothesis() names it.
class PreconditionError : public std::runtime_error {
public:
  PreconditionError(std::string hypothesis, const std::string& what)
      : std::runtime_error(what), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
  std::string hypothesis_;
};

// Work would exceed a configured budget (enumeration cap).
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sparsepat
