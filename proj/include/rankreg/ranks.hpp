#pragma once

#include <cstdint>
#include <vector>

namespace rankreg {

// R_i = sum_j 1{v_j <= v_i}; with no ties this is a permutation of 1..n,
// tied values share their maximal rank.
struct RankVector {
  std::vector<int> ranks;
  int n = 0;
};

struct TiePolicy {
  enum class Kind { literal, jitter };
  Kind kind = Kind::literal;
  std::uint64_t seed = 0;
  double epsilon = 0.0;

  static TiePolicy literal() { return {}; }
  // Adds i.i.d. Uniform[-epsilon, epsilon] noise before ranking so the
  // result is tie-free; deterministic given the seed.
  static TiePolicy jitter(std::uint64_t seed, double epsilon) {
    TiePolicy p;
    p.kind = Kind::jitter;
    p.seed = seed;
    p.epsilon = epsilon;
    return p;
  }
};

RankVector compute_ranks(const std::vector<double>& values,
                         const TiePolicy& policy = TiePolicy::literal());

// R_i / n under the literal policy.
std::vector<double> normalized_ranks(const std::vector<double>& values);

// Rank of each value against a reference set: sum_{r in reference} 1{r <= v}.
std::vector<int> ranks_against(const std::vector<double>& values,
                               const std::vector<double>& reference);

bool has_ties(const std::vector<double>& values);

}  // namespace rankreg
