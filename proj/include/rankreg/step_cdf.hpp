#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace rankreg {

// Right-continuous step distribution function: strictly increasing support
// plus cumulative probabilities. Carries empirical, mixture, counterfactual
// and projected signed-combination CDFs alike.
class StepCDF {
 public:
  StepCDF(std::vector<double> support, std::vector<double> cum);

  // P(Z <= y); 0 below the support, right-continuous lookups.
  double evaluate(double y) const;

  // P(Z < y): left limit just below y.
  double evaluate_left(double y) const;

  // Probability mass at support point k.
  double mass(std::size_t k) const {
    return k == 0 ? cum_[0] : cum_[k] - cum_[k - 1];
  }

  std::size_t size() const { return support_.size(); }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& cum() const { return cum_; }
  double min_support() const { return support_.front(); }
  double max_support() const { return support_.back(); }

 private:
  std::vector<double> support_;
  std::vector<double> cum_;
};

// Partial-identification interval for P(Y(1) >= Y(0)) - 1/2.
struct IdentifiedSet {
  double lower = 0.0;
  double upper = 0.0;
};

// Empirical CDF; n * ecdf(values).evaluate(values[i]) equals the literal rank
// of values[i], ties included.
StepCDF ecdf(const std::vector<double>& values);

// Pointwise convex combination on the merged support. Weights must be
// non-negative and sum to one within 1e-12.
StepCDF mixture(const std::vector<std::pair<double, StepCDF>>& components);

// Left-continuous generalized inverse: inf{y in support : F(y) >= u}.
// u = 0 returns the minimum of the support.
double generalized_inverse(const StepCDF& f, double u);

// Repairs a raw (possibly non-monotone, out-of-range) CDF estimate:
// pool-adjacent-violators projection, clip to [0, 1], rescale so the last
// value is 1. Throws DegenerateDistribution when everything collapses to 0.
StepCDF project_to_cdf(std::vector<double> support, std::vector<double> raw);

// tau_r(F1, F0) = E_{Z1 ~ F1}[F0(Z1)] - 1/2 evaluated exactly for step
// distributions. A pair tied across the two supports contributes weight 1
// (the >= convention), not 1/2.
double rank_ate(const StepCDF& f1, const StepCDF& f0);

// Two-sample U-statistic form: (1/(n1*n0)) sum_i sum_j 1{y0_j <= y1_i} - 1/2.
// Agrees with rank_ate(ecdf(y1), ecdf(y0)) to 1e-12 on every input.
double rank_ate_pairs(const std::vector<double>& y1,
                      const std::vector<double>& y0);

// Sharp bounds on P(Y(1) >= Y(0)) - 1/2 from the margins alone:
//   lower = max{sup_y(F0(y) - F1(y)), 0} - 1/2
//   upper = min{inf_y(F0(y) - F1(y)), 0} + 1/2
// The sup/inf are exact: evaluated on the merged support and at the left
// limits just below each support point.
IdentifiedSet fan_park_bounds(const StepCDF& f1, const StepCDF& f0);

}  // namespace rankreg
