#pragma once

#include <string>

#include "rankreg/simlab/dgp.hpp"

namespace rankreg::simlab {

enum class OracleMethod { closed_form, pair_u_statistic, numeric_integration };

const char* oracle_method_name(OracleMethod m);

// Independently computed true value of an estimand under a DGP, with the
// method used and its precision (1e-9 for closed forms, 3x the Monte Carlo
// standard error otherwise).
struct OracleValue {
  std::string estimand;
  double value = 0.0;
  OracleMethod method = OracleMethod::closed_form;
  double precision = 0.0;
};

// Supported estimand names (validity depends on the DGP kind):
//   rank_ate, thm4_weighted_rank_ate, thm5_beta_h_identity,
//   median_dichotomize_rank_ate, rank_late, thm6_2sls_all,
//   thm6_2sls_treated, thm6_2sls_control, rank_att, thm9_did_limit,
//   rank_pt_lhs, rank_pt_rhs, alt_rank_pt_w1, alt_rank_pt_w0,
//   cutoff_rank_ate, thm11_rdd_all, thm11_rdd_treated, thm11_rdd_control,
//   tau_r, tau_star
OracleValue oracle_estimand(const DgpSpec& spec, const std::string& estimand);

}  // namespace rankreg::simlab
