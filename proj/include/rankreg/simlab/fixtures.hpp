#pragma once

#include <optional>
#include <string>

#include "rankreg/simlab/dgp.hpp"

namespace rankreg::simlab::fixtures {

// Frozen named DGPs. The separating fixtures (sign flips, limit gaps) were
// found by scanning small parameter grids against the closed-form oracles;
// the acceptance suite re-verifies every frozen gap before asserting the
// Monte Carlo behavior.

DgpSpec thm1_gauss_shift();         // randomized binary, unit Gaussian shift
DgpSpec thm3_prognostic_cov();      // same margins, prognostic covariate
DgpSpec thm4_discrete_confounded(); // dummy X, saturated propensity
DgpSpec thm5_three_dose();          // 3-level discrete dose
DgpSpec ex5_median_dichotomize();   // continuous dose, median split target
DgpSpec thm6_iv_signflip();         // naive 2SLS sign opposite to rank-LATE
DgpSpec iv_perfect_compliance();
DgpSpec iv_mixed_types();           // shares (0.3, 0.2, 0.5)
DgpSpec ex7_panel_cic();            // f0 = u, f1 = u^3, shifted confounder
DgpSpec panel_rank_pt_violator();
DgpSpec thm11_rdd();
DgpSpec ex3_dominance();            // stochastic-dominance shift
DgpSpec hand_paradox();             // sign(tau_star) != sign(tau_r)

// Margin configurations for the coupled-DGP containment grid, i in [0, 20).
DgpSpec coupled_margins(int i);
DgpSpec with_coupling(DgpSpec spec,
                      CoupledPotentialsParams::Coupling coupling);

std::optional<DgpSpec> fixture_by_name(const std::string& name);

}  // namespace rankreg::simlab::fixtures
