#pragma once

#include "rankreg/iv.hpp"
#include "rankreg/sample.hpp"
#include "rankreg/step_cdf.hpp"

namespace rankreg {

// Standard rank-DiD: double difference of mean normalized within-period
// ranks. Its limit is NOT the rank-ATT (see rank_mdid).
Estimate rank_did(const PanelSample& p);

// Same estimator with within-group ranks per period; the limit is unchanged,
// only Theorem-2-style finite-sample terms move.
Estimate rank_did(const PanelSample& p, RankReference ref);

// Changes-in-changes counterfactual distribution of the treated group's
// untreated post-period outcome:
//   F_{Y0|W=1} o Qinv_{Y0|W=0} o F_{Y1|W=0}
// evaluated on the period-1 control support, then normalized via
// project_to_cdf.
StepCDF cic_counterfactual(const PanelSample& p);

// Modified rank-DiD: post-period ranks replaced by the counterfactual CDF
// evaluated at each outcome. Recovers the rank-ATT when the counterfactual
// is consistent. The counterfactual is an argument so oracle and CiC
// estimates share one code path.
Estimate rank_mdid(const PanelSample& p, const StepCDF& counterfactual);

struct RankParallelTrend {
  double lhs = 0.0;  // tau_r(F_{Y1(0)|W=1}, F_{Y1(0)|W=0})
  double rhs = 0.0;  // tau_r(F_{Y0(0)|W=1}, F_{Y0(0)|W=0})
};

// Both sides of the rank parallel trend condition, from oracle
// potential-outcome CDFs (the lhs is counterfactual, so this is a simulation
// facility, not a data-side test).
RankParallelTrend check_rank_parallel_trend(const StepCDF& f_y1_0_w1,
                                            const StepCDF& f_y1_0_w0,
                                            const StepCDF& f_y0_0_w1,
                                            const StepCDF& f_y0_0_w0);

}  // namespace rankreg
