#include "rankreg/simlab/convergence.hpp"

#include <cmath>

#include "rankreg/did.hpp"
#include "rankreg/error.hpp"
#include "rankreg/iv.hpp"
#include "rankreg/math_util.hpp"
#include "rankreg/ols.hpp"
#include "rankreg/rdd.hpp"

namespace rankreg::simlab {

namespace {

RddConfig rdd_config_for(const DgpSpec& spec) {
  const auto& p = std::get<RddSharpParams>(spec.params);
  RddConfig cfg;
  cfg.cutoff = p.cutoff;
  cfg.rule_constant = p.bandwidth_constant;
  return cfg;
}

// Oracle counterfactual for the modified DiD: the empirical distribution of
// the treated group's retained untreated period-1 potential outcomes.
StepCDF oracle_counterfactual(const GeneratedData& d) {
  std::vector<double> vals;
  const PanelSample& p = d.panel();
  for (std::size_t i = 0; i < p.n(); ++i) {
    if (p.w[i] == 1.0) vals.push_back(d.pot_y0[i]);
  }
  return ecdf(vals);
}

}  // namespace

double run_estimator(const DgpSpec& spec, const std::string& estimator,
                     const GeneratedData& data) {
  if (estimator == "rank_ols_nocov") {
    return rank_ols_nocov(data.sample()).value;
  }
  if (estimator == "rank_ols_refgroup_treated") {
    return rank_ols_refgroup(data.sample(), RefGroup::treated).value;
  }
  if (estimator == "rank_ols_refgroup_control") {
    return rank_ols_refgroup(data.sample(), RefGroup::control).value;
  }
  if (estimator == "rank_ols_cov") {
    return rank_ols_cov(data.sample(), false).value;
  }
  if (estimator == "rank_ols_cov_interact") {
    return rank_ols_cov(data.sample(), true).value;
  }
  if (estimator == "rank_ols_identity") {
    return rank_ols_general(data.sample(), TreatmentTransform::identity())
        .value;
  }
  if (estimator == "rank_ols_identity_normalized") {
    return rank_ols_general(data.sample(), TreatmentTransform::identity(true))
        .value;
  }
  if (estimator == "rank_ols_rank") {
    return rank_ols_general(data.sample(), TreatmentTransform::rank()).value;
  }
  if (estimator == "rank_ols_dichotomize") {
    return rank_ols_general(data.sample(),
                            TreatmentTransform::dichotomize_at(0.5, true))
        .value;
  }
  if (estimator == "rank_2sls_all") {
    return rank_2sls(data.sample(), RankReference::all).value;
  }
  if (estimator == "rank_2sls_treated") {
    return rank_2sls(data.sample(), RankReference::treated).value;
  }
  if (estimator == "rank_2sls_control") {
    return rank_2sls(data.sample(), RankReference::control).value;
  }
  if (estimator == "rank_2sls_complier_0") {
    return rank_2sls_complier(data.sample(), 0.0).value;
  }
  if (estimator == "rank_2sls_complier_50") {
    return rank_2sls_complier(data.sample(), 0.5).value;
  }
  if (estimator == "rank_2sls_complier_100") {
    return rank_2sls_complier(data.sample(), 1.0).value;
  }
  if (estimator == "rank_did") {
    return rank_did(data.panel()).value;
  }
  if (estimator == "rank_mdid_cic") {
    return rank_mdid(data.panel(), cic_counterfactual(data.panel())).value;
  }
  if (estimator == "rank_mdid_oracle") {
    return rank_mdid(data.panel(), oracle_counterfactual(data)).value;
  }
  if (estimator == "rank_rdd_all") {
    return rank_rdd(data.sample(), rdd_config_for(spec), RankReference::all)
        .value;
  }
  if (estimator == "rank_rdd_treated") {
    return rank_rdd(data.sample(), rdd_config_for(spec),
                    RankReference::treated)
        .value;
  }
  if (estimator == "rank_rdd_control") {
    return rank_rdd(data.sample(), rdd_config_for(spec),
                    RankReference::control)
        .value;
  }
  if (estimator == "rank_mrdd") {
    return rank_mrdd(data.sample(), rdd_config_for(spec)).value;
  }
  fail(ErrorCode::invalid_spec, "unknown estimator '" + estimator + "'");
}

std::string default_estimand(const DgpSpec& spec,
                             const std::string& estimator) {
  if (estimator.rfind("rank_2sls_complier", 0) == 0) return "rank_late";
  if (estimator == "rank_2sls_all") return "thm6_2sls_all";
  if (estimator == "rank_2sls_treated") return "thm6_2sls_treated";
  if (estimator == "rank_2sls_control") return "thm6_2sls_control";
  if (estimator == "rank_did") return "thm9_did_limit";
  if (estimator.rfind("rank_mdid", 0) == 0) return "rank_att";
  if (estimator == "rank_rdd_all") return "thm11_rdd_all";
  if (estimator == "rank_rdd_treated") return "thm11_rdd_treated";
  if (estimator == "rank_rdd_control") return "thm11_rdd_control";
  if (estimator == "rank_mrdd") return "cutoff_rank_ate";
  if (estimator == "rank_ols_dichotomize") {
    return "median_dichotomize_rank_ate";
  }
  if (spec.kind == DgpKind::confounded_binary) return "thm4_weighted_rank_ate";
  if (spec.kind == DgpKind::general_treatment) return "thm5_beta_h_identity";
  return "rank_ate";
}

std::vector<ConvergenceAggregate> ConvergenceTable::aggregates() const {
  std::vector<ConvergenceAggregate> out;
  for (long n : ns) {
    ConvergenceAggregate agg;
    agg.n = n;
    std::vector<double> estimates;
    for (const auto& row : rows) {
      if (row.n != n) continue;
      if (row.failed) {
        ++agg.n_errors;
      } else {
        estimates.push_back(row.estimate);
      }
    }
    if (!estimates.empty()) {
      agg.mean = mean(estimates);
      agg.sd = sample_sd(estimates);
      agg.abs_err = std::abs(agg.mean - oracle.value);
    }
    out.push_back(agg);
  }
  return out;
}

ConvergenceTable convergence_run(const DgpSpec& spec,
                                 const std::string& estimator,
                                 const std::vector<long>& ns, int reps) {
  if (ns.empty() || reps < 1) {
    fail(ErrorCode::invalid_spec, "convergence_run: empty grid");
  }
  ConvergenceTable table;
  table.run_id = spec.name + "/" + estimator;
  table.estimator = estimator;
  table.oracle = oracle_estimand(spec, default_estimand(spec, estimator));
  table.seed = spec.seed;
  table.reps = reps;
  table.ns = ns;
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    for (int rep = 0; rep < reps; ++rep) {
      // One stream per (n, rep) cell keeps replications independent.
      std::uint64_t stream =
          static_cast<std::uint64_t>(ni) * static_cast<std::uint64_t>(reps) +
          static_cast<std::uint64_t>(rep);
      ConvergenceRow row;
      row.n = ns[ni];
      row.rep = rep;
      try {
        GeneratedData data = generate(spec, ns[ni], stream);
        row.estimate = run_estimator(spec, estimator, data);
      } catch (const Error& e) {
        row.failed = true;
        row.error_code = error_code_name(e.code());
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

HandParadox hand_paradox_demo(const DgpSpec& spec, long n) {
  if (spec.kind != DgpKind::coupled_potentials) {
    fail(ErrorCode::invalid_spec,
         "hand_paradox_demo needs a coupled_potentials DGP");
  }
  GeneratedData data = generate(spec, n, 0);
  HandParadox out;
  StepCDF f1 = ecdf(data.pot_y1);
  StepCDF f0 = ecdf(data.pot_y0);
  out.tau_r = rank_ate(f1, f0);
  long ge = 0;
  for (long i = 0; i < n; ++i) {
    if (data.pot_y1[i] >= data.pot_y0[i]) ++ge;
  }
  out.tau_star = static_cast<double>(ge) / static_cast<double>(n) - 0.5;
  out.bounds = fan_park_bounds(f1, f0);
  if (out.tau_star < out.bounds.lower - 1e-12 ||
      out.tau_star > out.bounds.upper + 1e-12) {
    throw std::logic_error("Fan-Park bounds failed to contain tau_star");
  }
  return out;
}

}  // namespace rankreg::simlab
