#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rankreg/sample.hpp"

namespace rankreg {

// Least-squares fit of response on the given design columns via a
// rank-revealing orthogonal factorization. Throws SingularDesign when the
// smallest singular value falls below 1e-10 relative to the largest.
std::vector<double> ols_solve(
    const std::vector<std::vector<double>>& design_columns,
    const std::vector<double>& response);

// Condition number (largest/smallest singular value) of the design; shares
// the singularity threshold with ols_solve.
double design_condition_number(
    const std::vector<std::vector<double>>& design_columns);

enum class RefGroup { treated, control };

// Treatment transform h_n for the general rank-OLS. identity/custom act on
// the raw treatment; rank/dichotomize_at/step act on the normalized rank
// R^W_i/n of the treatment.
struct TreatmentTransform {
  enum class Kind { identity, rank, dichotomize_at, step, custom };

  Kind kind = Kind::identity;
  bool normalize = false;          // rescale h_n by kappa-hat
  double threshold_rank = 0.5;     // dichotomize_at, in (0, 1)
  std::vector<double> breakpoints; // step: strictly increasing rank cutpoints
  // custom: right-continuous step table of (treatment knot, value) pairs;
  // arguments below the first knot take the first value.
  std::vector<std::pair<double, double>> table;

  static TreatmentTransform identity(bool normalize = false);
  static TreatmentTransform rank(bool normalize = false);
  static TreatmentTransform dichotomize_at(double threshold_rank,
                                           bool normalize = false);
  static TreatmentTransform step(std::vector<double> breakpoints,
                                 bool normalize = false);
  static TreatmentTransform custom(std::vector<std::pair<double, double>> table,
                                   bool normalize = false);
};

// h_n applied to every treatment value; no kappa rescaling here.
std::vector<double> transform_treatment(const std::vector<double>& w,
                                        const TreatmentTransform& t);

// Rank-OLS on a binary treatment, full-sample ranks. The coefficient equals
// the exact difference of mean normalized ranks between the two groups.
Estimate rank_ols_nocov(const Sample& s);

// Ranks computed within the reference group only (normalized by that group's
// size). Requires a tie-free outcome.
Estimate rank_ols_refgroup(const Sample& s, RefGroup ref);

// Covariate-adjusted rank-OLS; interact=true centers covariates at the
// full-sample mean inside the treatment interaction.
Estimate rank_ols_cov(const Sample& s, bool interact);

// Rank-OLS with a transformed treatment (covariates included when present).
// With normalize=true the transform is rescaled by kappa-hat first and the
// value used is recorded in the diagnostics.
Estimate rank_ols_general(const Sample& s, const TreatmentTransform& t);

// kappa-hat of the normalization U-statistic:
//   sum_{i!=j} (h(W_i)-h(W_j)) 1{W_i>W_j} / sum_{i!=j} (h(W_i)-h(W_j))^2 1{W_i>W_j}
// computed as the exact pair sum (grouped over distinct treatment values).
double normalization_kappa(const std::vector<double>& w,
                           const TreatmentTransform& t);

struct ConfoundedWeights {
  std::vector<double> omega_star;  // projection coefficients of pi(X) on X
  std::vector<double> pi_tilde;    // fitted linear propensity per unit
  std::vector<double> weights;     // pi(X)(1 - pi_tilde(X)) per unit
  bool projection_outside_unit_interval = false;
};

// Sample-analogue projection of the propensity onto the design columns and
// the implied effective-estimand weights. Propensities must satisfy strict
// overlap in [c, 1-c].
ConfoundedWeights confounded_weights(
    const std::vector<std::vector<double>>& x_columns,
    const std::vector<double>& propensity, double overlap_c = 0.01);

}  // namespace rankreg
