#include "sparsepat/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sparsepat/errors.hpp"

namespace sparsepat {

SparsityPattern::SparsityPattern(std::vector<int> indices, int p) : indices_(std::move(indices)), p_(p) {
  if (p < 0) throw ValidationError("ambient dimension p must be nonnegative, got " + std::to_string(p));
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0 || indices_[i] >= p) {
      throw ValidationError("index " + std::to_string(indices_[i]) + " out of range [0, " +
                            std::to_string(p) + ")");
    }
    if (i > 0 && indices_[i] == indices_[i - 1]) {
      throw ValidationError("duplicate index " + std::to_string(indices_[i]));
    }
  }
}

bool SparsityPattern::contains(int index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::string SparsityPattern::to_string(int base) const {
  std::string out = "{";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(indices_[i] + base);
  }
  return out + "}";
}

SparsityPattern make_pattern(std::vector<int> indices, int p) { return SparsityPattern(std::move(indices), p); }

SparsityPattern make_pattern_one_based(const std::vector<int>& indices, int p) {
  std::vector<int> zero_based;
  zero_based.reserve(indices.size());
  for (int i : indices) {
    if (i < 1 || i > p) {
      throw ValidationError("index " + std::to_string(i) + " out of range [1, " + std::to_string(p) + "]");
    }
    zero_based.push_back(i - 1);
  }
  return SparsityPattern(std::move(zero_based), p);
}

SparsityPattern pattern_difference(const SparsityPattern& a, const SparsityPattern& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw ValidationError("pattern_difference: ambient dimensions differ (" + std::to_string(a.ambient_dim()) +
                          " vs " + std::to_string(b.ambient_dim()) + ")");
  }
  std::vector<int> out;
  std::set_difference(a.indices().begin(), a.indices().end(), b.indices().begin(), b.indices().end(),
                      std::back_inserter(out));
  return SparsityPattern(std::move(out), a.ambient_dim());
}

SparsityPattern leading_pattern(int k, int p) {
  if (k < 0 || k > p) throw ValidationError("leading_pattern: need 0 <= k <= p");
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  return SparsityPattern(std::move(idx), p);
}

std::optional<std::uint64_t> binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at every step.
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

bool next_combination(std::vector<int>& indices, int p) {
  const int k = static_cast<int>(indices.size());
  int i = k - 1;
  while (i >= 0 && indices[static_cast<std::size_t>(i)] == p - k + i) --i;
  if (i < 0) return false;
  ++indices[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) indices[static_cast<std::size_t>(j)] = indices[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

std::vector<int> unrank_combination(int p, int k, std::uint64_t rank) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  int next = 0;
  for (int slot = 0; slot < k; ++slot) {
    // Skip blocks of combinations whose slot-th element is smaller than the target.
    for (;; ++next) {
      const auto block = binomial(p - next - 1, k - slot - 1).value();
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(next++);
  }
  return out;
}

PatternEnumerator::PatternEnumerator(int p, int k) : p_(p), k_(k) {
  if (p < 0 || k < 0 || k > p) {
    throw ValidationError("enumerate_patterns: need 0 <= k <= p, got p=" + std::to_string(p) +
                          ", k=" + std::to_string(k));
  }
}

PatternEnumerator::iterator PatternEnumerator::begin() const {
  std::vector<int> first(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i) first[static_cast<std::size_t>(i)] = i;
  return iterator(p_, std::move(first), false);
}

PatternEnumerator::iterator PatternEnumerator::at_rank(std::uint64_t rank) const {
  const auto total = binomial(p_, k_);
  if (total && rank >= *total) return end();
  return iterator(p_, unrank_combination(p_, k_, rank), false);
}

PatternEnumerator::iterator& PatternEnumerator::iterator::operator++() {
  if (!done_ && !next_combination(current_, p_)) {
    done_ = true;
    current_.clear();
  }
  return *this;
}

}  // namespace sparsepat
