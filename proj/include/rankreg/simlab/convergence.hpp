#pragma once

#include <string>
#include <vector>

#include "rankreg/sample.hpp"
#include "rankreg/simlab/dgp.hpp"
#include "rankreg/simlab/oracle.hpp"
#include "rankreg/step_cdf.hpp"

namespace rankreg::simlab {

// One replication of one estimator at one sample size.
struct ConvergenceRow {
  long n = 0;
  int rep = 0;
  double estimate = 0.0;
  bool failed = false;
  std::string error_code;
};

struct ConvergenceAggregate {
  long n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double abs_err = 0.0;
  long n_errors = 0;
};

struct ConvergenceTable {
  std::string run_id;  // "<dgp>/<estimator>"
  std::string estimator;
  OracleValue oracle;
  std::uint64_t seed = 0;
  int reps = 0;
  std::vector<long> ns;
  std::vector<ConvergenceRow> rows;

  std::vector<ConvergenceAggregate> aggregates() const;
};

// Estimator names accepted by the runner (availability depends on the DGP):
//   rank_ols_nocov, rank_ols_refgroup_treated, rank_ols_refgroup_control,
//   rank_ols_cov, rank_ols_cov_interact, rank_ols_identity,
//   rank_ols_identity_normalized, rank_ols_rank, rank_ols_dichotomize,
//   rank_2sls_all, rank_2sls_treated, rank_2sls_control,
//   rank_2sls_complier_0, rank_2sls_complier_50, rank_2sls_complier_100,
//   rank_did, rank_mdid_cic, rank_mdid_oracle,
//   rank_rdd_all, rank_rdd_treated, rank_rdd_control, rank_mrdd
double run_estimator(const DgpSpec& spec, const std::string& estimator,
                     const GeneratedData& data);

// The estimand a given estimator targets under a given DGP kind.
std::string default_estimand(const DgpSpec& spec, const std::string& estimator);

// Per-rep estimates across sample sizes against the oracle; estimator errors
// are recorded per replication, never fatal. Deterministic given spec.seed.
ConvergenceTable convergence_run(const DgpSpec& spec,
                                 const std::string& estimator,
                                 const std::vector<long>& ns, int reps);

struct HandParadox {
  double tau_r = 0.0;
  double tau_star = 0.0;
  IdentifiedSet bounds;
};

// Margins-based tau_r, coupling-based tau_star and Fan-Park bounds from a
// large coupled draw; the bounds are checked to contain tau_star.
HandParadox hand_paradox_demo(const DgpSpec& spec, long n = 200000);

}  // namespace rankreg::simlab
