#pragma once

#include <cstdint>

#include "sparsepat/model.hpp"
#include "sparsepat/projector.hpp"

namespace sparsepat {

struct DecodeResult {
  SparsityPattern pattern;
  double score = 0.0;            // minimal residual sum of squares
  double runner_up_score = 0.0;  // second smallest score; +inf with a single candidate
  std::uint64_t candidates_scored = 0;
  bool k_exceeds_n = false;
};

struct DecoderOptions {
  std::uint64_t max_candidates = 5'000'000;
  int workers = 1;
  double rank_tolerance = kDefaultRankTolerance;
};

// ||y - Pi_F y||^2. Throws ValidationError unless |pattern| == k.
double score_support(const ProblemInstance& instance, const SparsityPattern& pattern,
                     double rank_tolerance = kDefaultRankTolerance);

// Exhaustive minimizer of the residual over all size-k supports. Ties go to
// the lexicographically smallest pattern, for any worker count.
// Throws ResourceError when C(p, k) exceeds options.max_candidates.
DecodeResult decode_exhaustive(const ProblemInstance& instance, const DecoderOptions& options = {});

// Z_F = ||y - Pi_T y||^2 - ||y - Pi_F y||^2 = y^T (Pi_F - Pi_T) y; positive iff F beats T.
double pairwise_statistic(const ProblemInstance& instance, const SparsityPattern& f,
                          double rank_tolerance = kDefaultRankTolerance);

}  // namespace sparsepat
