#include "rankreg/did.hpp"

#include <algorithm>

#include "rankreg/math_util.hpp"
#include "rankreg/ranks.hpp"

namespace rankreg {

namespace {

void check_panel(const PanelSample& p) {
  if (p.n() < 2 || p.y0.size() != p.n() || p.w.size() != p.n()) {
    fail(ErrorCode::invalid_input,
         "panel needs equal-length y0, y1, w with at least two units");
  }
  require_variation(p.w, "treatment");
}

std::vector<double> subset(const std::vector<double>& v,
                           const std::vector<double>& w, double group) {
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] == group) out.push_back(v[i]);
  }
  return out;
}

// Within-period normalized ranks for the chosen ranking reference.
std::vector<double> period_ranks(const std::vector<double>& y,
                                 const std::vector<double>& w,
                                 RankReference ref) {
  if (ref == RankReference::all) return normalized_ranks(y);
  double group = (ref == RankReference::treated) ? 1.0 : 0.0;
  std::vector<double> ref_values = subset(y, w, group);
  std::vector<int> counts = ranks_against(y, ref_values);
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = static_cast<double>(counts[i]) /
             static_cast<double>(ref_values.size());
  }
  return out;
}

double double_difference(const std::vector<double>& post,
                         const std::vector<double>& pre,
                         const std::vector<double>& w) {
  NeumaierSum trt, ctl;
  long n1 = 0, n0 = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 1.0) {
      trt.add(post[i] - pre[i]);
      ++n1;
    } else {
      ctl.add(post[i] - pre[i]);
      ++n0;
    }
  }
  return trt.value() / static_cast<double>(n1) -
         ctl.value() / static_cast<double>(n0);
}

}  // namespace

Estimate rank_did(const PanelSample& p) {
  return rank_did(p, RankReference::all);
}

Estimate rank_did(const PanelSample& p, RankReference ref) {
  check_panel(p);
  std::vector<double> r1 = period_ranks(p.y1, p.w, ref);
  std::vector<double> r0 = period_ranks(p.y0, p.w, ref);
  Estimate e;
  e.value = double_difference(r1, r0, p.w);
  e.estimator = "rank_did";
  e.estimand =
      "tau_r(F[Y1(1)|W=1],F[Y1(0)|W=0]) - tau_r(F[Y1(0)|W=1],F[Y1(0)|W=0])";
  e.n = static_cast<long>(p.n());
  long n1 = 0;
  for (double wi : p.w) n1 += (wi == 1.0) ? 1 : 0;
  e.diagnostics["n1"] = static_cast<double>(n1);
  e.diagnostics["n0"] = static_cast<double>(p.n() - static_cast<std::size_t>(n1));
  return e;
}

StepCDF cic_counterfactual(const PanelSample& p) {
  check_panel(p);
  std::vector<double> y1_ctrl = subset(p.y1, p.w, 0.0);
  std::vector<double> y0_ctrl = subset(p.y0, p.w, 0.0);
  std::vector<double> y0_trt = subset(p.y0, p.w, 1.0);
  if (y1_ctrl.empty() || y0_ctrl.empty() || y0_trt.empty()) {
    fail(ErrorCode::degenerate_distribution,
         "cic_counterfactual: a required group is empty");
  }
  StepCDF f_y1_ctrl = ecdf(y1_ctrl);
  StepCDF f_y0_ctrl = ecdf(y0_ctrl);
  StepCDF f_y0_trt = ecdf(y0_trt);
  // F_{Y0|W=1}( Qinv_{Y0|W=0}( F_{Y1|W=0}(y) ) ) on the period-1 control
  // support; monotone by construction, projection normalizes the endpoints.
  std::vector<double> raw(f_y1_ctrl.size());
  for (std::size_t k = 0; k < f_y1_ctrl.size(); ++k) {
    double u = f_y1_ctrl.cum()[k];
    double q = generalized_inverse(f_y0_ctrl, u);
    raw[k] = f_y0_trt.evaluate(q);
  }
  return project_to_cdf(f_y1_ctrl.support(), raw);
}

Estimate rank_mdid(const PanelSample& p, const StepCDF& counterfactual) {
  check_panel(p);
  std::vector<double> m(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) {
    m[i] = counterfactual.evaluate(p.y1[i]);
  }
  std::vector<double> r0 = normalized_ranks(p.y0);
  Estimate e;
  e.value = double_difference(m, r0, p.w);
  e.estimator = "rank_mdid";
  e.estimand = "rank-ATT";
  e.n = static_cast<long>(p.n());
  long n1 = 0;
  for (double wi : p.w) n1 += (wi == 1.0) ? 1 : 0;
  e.diagnostics["n1"] = static_cast<double>(n1);
  e.diagnostics["n0"] = static_cast<double>(p.n() - static_cast<std::size_t>(n1));
  return e;
}

RankParallelTrend check_rank_parallel_trend(const StepCDF& f_y1_0_w1,
                                            const StepCDF& f_y1_0_w0,
                                            const StepCDF& f_y0_0_w1,
                                            const StepCDF& f_y0_0_w0) {
  RankParallelTrend out;
  out.lhs = rank_ate(f_y1_0_w1, f_y1_0_w0);
  out.rhs = rank_ate(f_y0_0_w1, f_y0_0_w0);
  return out;
}

}  // namespace rankreg
