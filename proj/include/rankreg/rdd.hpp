#pragma once

#include <cstddef>
#include <optional>

#include "rankreg/iv.hpp"
#include "rankreg/sample.hpp"

namespace rankreg {

// Bounded-support kernels on [-1, 1].
struct Kernel {
  enum class Kind { triangular, epanechnikov, uniform };
  Kind kind = Kind::triangular;
  double radius = 1.0;
};

double kernel_weight(const Kernel& k, double u);

struct RddConfig {
  double cutoff = 0.0;
  // Explicit bandwidth wins; otherwise h = rule_constant * sd(run) * n^(-1/5).
  std::optional<double> bandwidth;
  double rule_constant = 1.0;
  Kernel kernel;

  double resolve_bandwidth(std::size_t n, double run_sd) const;
};

// Kernel-weighted difference of mean normalized ranks across the cutoff
// (the boundary point belongs to the upper side). Not reference-robust; the
// estimand label records the limit for the chosen reference.
Estimate rank_rdd(const Sample& s, const RddConfig& cfg, RankReference ref);

// Kernel U-statistic over (above, below) pairs; the weighted concordant
// fraction minus 1/2. Identifies the rank-ATE at the cutoff.
Estimate rank_mrdd(const Sample& s, const RddConfig& cfg);

}  // namespace rankreg
