#pragma once

#include <vector>

#include "rankreg/sample.hpp"
#include "rankreg/step_cdf.hpp"

namespace rankreg {

// Ranking reference for estimators that are not reference-robust.
enum class RankReference { all, treated, control };

// Plug-in type shares under a binary instrument:
//   pi_a = n10/n0, pi_n = n01/n1, pi_c = n11/n1 - n10/n0,
// with pi_c clamped to [1e-6, 1] (clamped flag set when that fires).
struct ComplierShares {
  double pi_a = 0.0;
  double pi_n = 0.0;
  double pi_c = 0.0;
  bool clamped = false;
};

struct ComplierCdfs {
  StepCDF f1c;
  StepCDF f0c;
  ComplierShares shares;
};

// Raw signed combinations of the (W,Z)-cell ECDFs on the merged outcome
// support, before projection. Exposed so the arithmetic can be checked
// against hand evaluation.
struct ComplierRaw {
  std::vector<double> support;
  std::vector<double> raw1;
  std::vector<double> raw0;
};

// Wald ratio of the difference in mean normalized ranks (per reference) over
// the first-stage difference in mean treatment.
Estimate rank_2sls(const Sample& s, RankReference ref);

ComplierShares estimate_complier_shares(const Sample& s);

ComplierRaw complier_raw_combination(const Sample& s,
                                     const ComplierShares& shares);

// Complier potential-outcome CDFs: signed cell-ECDF combinations passed
// through project_to_cdf.
ComplierCdfs estimate_complier_cdfs(const Sample& s);

// 2SLS on outcomes re-ranked by zeta*F1c + (1-zeta)*F0c; identifies the
// rank-LATE for any zeta in [0, 1].
Estimate rank_2sls_complier(const Sample& s, double zeta = 0.5);

}  // namespace rankreg
