#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sparsepat {

// A support set: strictly increasing column indices in [0, p).
class SparsityPattern {
public:
  SparsityPattern() = default;

  // Sorts the indices. Throws ValidationError on duplicates or out-of-range entries.
  SparsityPattern(std::vector<int> indices, int p);

  const std::vector<int>& indices() const noexcept { return indices_; }
  int ambient_dim() const noexcept { return p_; }
  int cardinality() const noexcept { return static_cast<int>(indices_.size()); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(int index) const;
  int operator[](std::size_t i) const { return indices_[i]; }

  // "{1,3,5}" with the given index base.
  std::string to_string(int base = 0) const;

  friend bool operator==(const SparsityPattern&, const SparsityPattern&) = default;
  // Lexicographic order of the index lists.
  friend auto operator<=>(const SparsityPattern& a, const SparsityPattern& b) {
    return a.indices_ <=> b.indices_;
  }

private:
  std::vector<int> indices_;
  int p_ = 0;
};

SparsityPattern make_pattern(std::vector<int> indices, int p);

// Pattern from 1-based indices (CLI convention).
SparsityPattern make_pattern_one_based(const std::vector<int>& indices, int p);

// a \ b. Throws ValidationError when the ambient dimensions differ.
SparsityPattern pattern_difference(const SparsityPattern& a, const SparsityPattern& b);

// {0, ..., k-1}
SparsityPattern leading_pattern(int k, int p);

// Exact binomial coefficient; nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> binomial(int n, int k);

// ln C(n, k) via log-gamma.
double log_binomial(double n, double k);

// Lexicographic k-combinations of {0, ..., p-1}, as a forward range.
class PatternEnumerator {
public:
  // Throws ValidationError unless 0 <= k <= p.
  PatternEnumerator(int p, int k);

  class iterator {
  public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = SparsityPattern;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    SparsityPattern operator*() const { return SparsityPattern(current_, p_); }
    const std::vector<int>& indices() const noexcept { return current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator& other) const { return done_ == other.done_ && (done_ || current_ == other.current_); }

  private:
    friend class PatternEnumerator;
    iterator(int p, std::vector<int> start, bool done) : p_(p), current_(std::move(start)), done_(done) {}
    int p_ = 0;
    std::vector<int> current_;
    bool done_ = true;
  };

  iterator begin() const;
  iterator end() const { return iterator(); }

  // Iterator positioned at the combination with the given lexicographic rank.
  iterator at_rank(std::uint64_t rank) const;

  int p() const noexcept { return p_; }
  int k() const noexcept { return k_; }

private:
  int p_;
  int k_;
};

inline PatternEnumerator enumerate_patterns(int p, int k) { return PatternEnumerator(p, k); }

// Advances indices to the next k-combination of {0..p-1}; false after the last one.
bool next_combination(std::vector<int>& indices, int p);

// The combination of lexicographic rank `rank` among C(p, k).
std::vector<int> unrank_combination(int p, int k, std::uint64_t rank);

}  // namespace sparsepat
