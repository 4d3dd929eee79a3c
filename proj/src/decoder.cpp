#include "sparsepat/decoder.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "sparsepat/errors.hpp"

namespace sparsepat {

namespace {

void check_cardinality(const ProblemInstance& instance, const SparsityPattern& pattern) {
  if (pattern.cardinality() != instance.k()) {
    throw ValidationError("pattern has " + std::to_string(pattern.cardinality()) + " indices, expected k = " +
                          std::to_string(instance.k()));
  }
  if (pattern.ambient_dim() != instance.p()) {
    throw ValidationError("pattern ambient dimension " + std::to_string(pattern.ambient_dim()) +
                          " does not match p = " + std::to_string(instance.p()));
  }
}

struct Scored {
  double score = std::numeric_limits<double>::infinity();
  std::uint64_t rank = std::numeric_limits<std::uint64_t>::max();
};

bool better(const Scored& a, const Scored& b) {
  return a.score < b.score || (a.score == b.score && a.rank < b.rank);
}

// Best two candidates seen, ordered by (score, rank).
struct TopTwo {
  Scored first;
  Scored second;

  void offer(const Scored& s) {
    if (better(s, first)) {
      second = first;
      first = s;
    } else if (better(s, second)) {
      second = s;
    }
  }
};

TopTwo scan_range(const ProblemInstance& instance, std::uint64_t begin, std::uint64_t end, double tol) {
  TopTwo top;
  if (begin >= end) return top;
  std::vector<int> idx = unrank_combination(instance.p(), instance.k(), begin);
  const Vector& y = instance.observation();
  for (std::uint64_t rank = begin; rank < end; ++rank) {
    const SparsityPattern f(idx, instance.p());
    top.offer({residual_energy(build_projector(instance.design(), f, tol), y), rank});
    next_combination(idx, instance.p());
  }
  return top;
}

}  // namespace

double score_support(const ProblemInstance& instance, const SparsityPattern& pattern, double rank_tolerance) {
  check_cardinality(instance, pattern);
  return residual_energy(build_projector(instance.design(), pattern, rank_tolerance), instance.observation());
}

DecodeResult decode_exhaustive(const ProblemInstance& instance, const DecoderOptions& options) {
  const int p = instance.p();
  const int k = instance.k();
  const auto total = binomial(p, k);
  if (!total || *total > options.max_candidates) {
    throw ResourceError("exhaustive decode needs C(" + std::to_string(p) + "," + std::to_string(k) + ") = " +
                        (total ? std::to_string(*total) : std::string("> 2^64")) +
                        " candidates, over the cap of " + std::to_string(options.max_candidates));
  }

  const std::uint64_t count = *total;
  const auto workers = static_cast<std::uint64_t>(std::clamp<std::uint64_t>(
      static_cast<std::uint64_t>(std::max(options.workers, 1)), 1, std::max<std::uint64_t>(count, 1)));

  std::vector<TopTwo> partial(workers);
  if (workers == 1) {
    partial[0] = scan_range(instance, 0, count, options.rank_tolerance);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t lo = count * w / workers;
      const std::uint64_t hi = count * (w + 1) / workers;
      pool.emplace_back([&, w, lo, hi] { partial[w] = scan_range(instance, lo, hi, options.rank_tolerance); });
    }
  }

  TopTwo merged;
  for (const auto& part : partial) {
    merged.offer(part.first);
    merged.offer(part.second);
  }

  DecodeResult result;
  result.pattern = SparsityPattern(unrank_combination(p, k, merged.first.rank), p);
  result.score = merged.first.score;
  result.runner_up_score = merged.second.score;
  result.candidates_scored = count;
  result.k_exceeds_n = k > instance.n();
  return result;
}

double pairwise_statistic(const ProblemInstance& instance, const SparsityPattern& f, double rank_tolerance) {
  check_cardinality(instance, f);
  const double true_score = score_support(instance, instance.support(), rank_tolerance);
  const double alt_score = score_support(instance, f, rank_tolerance);
  return true_score - alt_score;
}

}  // namespace sparsepat
