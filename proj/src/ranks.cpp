#include "rankreg/ranks.hpp"

#include <algorithm>

#include "rankreg/error.hpp"
#include "rankreg/rng.hpp"

namespace rankreg {

namespace {

std::vector<int> literal_ranks(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    ranks[i] = static_cast<int>(
        std::upper_bound(sorted.begin(), sorted.end(), values[i]) -
        sorted.begin());
  }
  return ranks;
}

}  // namespace

RankVector compute_ranks(const std::vector<double>& values,
                         const TiePolicy& policy) {
  if (values.empty()) {
    fail(ErrorCode::invalid_input, "compute_ranks: empty input");
  }
  RankVector out;
  out.n = static_cast<int>(values.size());
  if (policy.kind == TiePolicy::Kind::literal) {
    out.ranks = literal_ranks(values);
    return out;
  }
  if (!(policy.epsilon > 0.0)) {
    fail(ErrorCode::invalid_input, "compute_ranks: jitter needs epsilon > 0");
  }
  // Re-draw the whole noise vector from the next stream on the (measure-zero)
  // chance the jittered values still tie.
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    CounterRng rng(policy.seed, attempt);
    std::vector<double> jittered(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      jittered[i] = values[i] + rng.uniform(-policy.epsilon, policy.epsilon);
    }
    if (!has_ties(jittered)) {
      out.ranks = literal_ranks(jittered);
      return out;
    }
  }
  fail(ErrorCode::invalid_input,
       "compute_ranks: jitter failed to break ties (epsilon too small)");
}

std::vector<double> normalized_ranks(const std::vector<double>& values) {
  RankVector rv = compute_ranks(values);
  std::vector<double> out(values.size());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = static_cast<double>(rv.ranks[i]) / n;
  }
  return out;
}

std::vector<int> ranks_against(const std::vector<double>& values,
                               const std::vector<double>& reference) {
  if (reference.empty()) {
    fail(ErrorCode::invalid_input, "ranks_against: empty reference set");
  }
  std::vector<double> sorted = reference;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = static_cast<int>(
        std::upper_bound(sorted.begin(), sorted.end(), values[i]) -
        sorted.begin());
  }
  return out;
}

bool has_ties(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace rankreg
