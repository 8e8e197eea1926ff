#include "rankreg/iv.hpp"

#include <algorithm>
#include <set>

#include "rankreg/math_util.hpp"
#include "rankreg/ranks.hpp"

namespace rankreg {

namespace {

struct IvCells {
  std::vector<double> y11, y10, y01, y00;  // y{w}{z}
  long m1 = 0, m0 = 0;                     // arm sizes by z
};

IvCells split_cells(const Sample& s) {
  if (!s.z.has_value()) {
    fail(ErrorCode::missing_column, "instrument column required");
  }
  const auto& z = *s.z;
  if (z.size() != s.n() || s.w.size() != s.n()) {
    fail(ErrorCode::invalid_input, "column length mismatch");
  }
  require_binary(s.w, "treatment");
  require_variation(z, "instrument");
  IvCells c;
  for (std::size_t i = 0; i < s.n(); ++i) {
    bool w = s.w[i] == 1.0;
    bool zi = z[i] == 1.0;
    (zi ? c.m1 : c.m0) += 1;
    if (w && zi) c.y11.push_back(s.y[i]);
    else if (w && !zi) c.y10.push_back(s.y[i]);
    else if (!w && zi) c.y01.push_back(s.y[i]);
    else c.y00.push_back(s.y[i]);
  }
  return c;
}

double arm_mean(const std::vector<double>& v, const std::vector<double>& z,
                double arm) {
  NeumaierSum s;
  long count = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (z[i] == arm) {
      s.add(v[i]);
      ++count;
    }
  }
  return s.value() / static_cast<double>(count);
}

// Wald ratio on already-transformed outcomes; shares the first-stage check.
Estimate wald_ratio(const Sample& s, const std::vector<double>& transformed,
                    const char* estimator, const char* estimand) {
  const auto& z = *s.z;
  double itt = arm_mean(transformed, z, 1.0) - arm_mean(transformed, z, 0.0);
  double first_stage = arm_mean(s.w, z, 1.0) - arm_mean(s.w, z, 0.0);
  if (!(first_stage > 0.0)) {
    fail(ErrorCode::weak_or_wrong_signed_first_stage,
         "first stage is zero or negative");
  }
  Estimate e;
  e.value = itt / first_stage;
  e.estimator = estimator;
  e.estimand = estimand;
  e.n = static_cast<long>(s.n());
  e.diagnostics["first_stage"] = first_stage;
  e.diagnostics["itt"] = itt;
  return e;
}

}  // namespace

Estimate rank_2sls(const Sample& s, RankReference ref) {
  IvCells cells = split_cells(s);
  (void)cells;
  std::vector<double> r;
  const char* estimand = "";
  const char* estimator = "";
  switch (ref) {
    case RankReference::all: {
      r = normalized_ranks(s.y);
      estimator = "rank_2sls_all";
      estimand = "tau_r(F[Y(1)|c],F[Y]) - tau_r(F[Y(0)|c],F[Y])";
      break;
    }
    case RankReference::treated:
    case RankReference::control: {
      double group = (ref == RankReference::treated) ? 1.0 : 0.0;
      std::vector<double> ref_values;
      for (std::size_t i = 0; i < s.n(); ++i) {
        if (s.w[i] == group) ref_values.push_back(s.y[i]);
      }
      if (ref_values.empty()) {
        fail(ErrorCode::no_variation, "empty ranking reference group");
      }
      std::vector<int> counts = ranks_against(s.y, ref_values);
      r.resize(s.n());
      for (std::size_t i = 0; i < s.n(); ++i) {
        r[i] = static_cast<double>(counts[i]) /
               static_cast<double>(ref_values.size());
      }
      if (ref == RankReference::treated) {
        estimator = "rank_2sls_treated";
        estimand = "tau_r(F[Y(1)|c],F[Y|W=1]) - tau_r(F[Y(0)|c],F[Y|W=1])";
      } else {
        estimator = "rank_2sls_control";
        estimand = "tau_r(F[Y(1)|c],F[Y|W=0]) - tau_r(F[Y(0)|c],F[Y|W=0])";
      }
      break;
    }
  }
  Estimate e = wald_ratio(s, r, estimator, estimand);
  e.diagnostics["m1"] = static_cast<double>(cells.m1);
  e.diagnostics["m0"] = static_cast<double>(cells.m0);
  return e;
}

ComplierShares estimate_complier_shares(const Sample& s) {
  IvCells c = split_cells(s);
  ComplierShares shares;
  shares.pi_a = static_cast<double>(c.y10.size()) / static_cast<double>(c.m0);
  shares.pi_n = static_cast<double>(c.y01.size()) / static_cast<double>(c.m1);
  double pi_c = static_cast<double>(c.y11.size()) / static_cast<double>(c.m1) -
                shares.pi_a;
  if (pi_c < 1e-6) {
    shares.pi_c = 1e-6;
    shares.clamped = true;
  } else if (pi_c > 1.0) {
    shares.pi_c = 1.0;
    shares.clamped = true;
  } else {
    shares.pi_c = pi_c;
  }
  return shares;
}

ComplierRaw complier_raw_combination(const Sample& s,
                                     const ComplierShares& shares) {
  IvCells c = split_cells(s);
  if (c.y11.empty() || c.y00.empty()) {
    fail(ErrorCode::insufficient_cells,
         "cells (W=1,Z=1) and (W=0,Z=0) must be non-empty");
  }
  if (shares.pi_a > 0.0 && c.y10.empty()) {
    fail(ErrorCode::insufficient_cells,
         "cell (W=1,Z=0) empty but pi_a positive");
  }
  if (shares.pi_n > 0.0 && c.y01.empty()) {
    fail(ErrorCode::insufficient_cells,
         "cell (W=0,Z=1) empty but pi_n positive");
  }
  std::set<double> merged(s.y.begin(), s.y.end());
  ComplierRaw out;
  out.support.assign(merged.begin(), merged.end());

  StepCDF f11 = ecdf(c.y11);
  StepCDF f00 = ecdf(c.y00);
  const double a1 = (shares.pi_a + shares.pi_c) / shares.pi_c;
  const double a2 = shares.pi_a / (shares.pi_a + shares.pi_c);
  const double b1 = (shares.pi_n + shares.pi_c) / shares.pi_c;
  const double b2 = shares.pi_n / (shares.pi_n + shares.pi_c);

  std::optional<StepCDF> f10, f01;
  if (shares.pi_a > 0.0) f10 = ecdf(c.y10);
  if (shares.pi_n > 0.0) f01 = ecdf(c.y01);
  out.raw1.resize(out.support.size());
  out.raw0.resize(out.support.size());
  for (std::size_t k = 0; k < out.support.size(); ++k) {
    double y = out.support[k];
    double v10 = f10 ? f10->evaluate(y) : 0.0;
    double v01 = f01 ? f01->evaluate(y) : 0.0;
    out.raw1[k] = a1 * (f11.evaluate(y) - a2 * v10);
    out.raw0[k] = b1 * (f00.evaluate(y) - b2 * v01);
  }
  return out;
}

ComplierCdfs estimate_complier_cdfs(const Sample& s) {
  ComplierShares shares = estimate_complier_shares(s);
  ComplierRaw raw = complier_raw_combination(s, shares);
  StepCDF f1c = project_to_cdf(raw.support, raw.raw1);
  StepCDF f0c = project_to_cdf(raw.support, raw.raw0);
  return ComplierCdfs{std::move(f1c), std::move(f0c), shares};
}

Estimate rank_2sls_complier(const Sample& s, double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    fail(ErrorCode::invalid_input, "zeta must lie in [0, 1]");
  }
  ComplierCdfs cdfs = estimate_complier_cdfs(s);
  StepCDF m = mixture({{zeta, cdfs.f1c}, {1.0 - zeta, cdfs.f0c}});
  std::vector<double> transformed(s.n());
  for (std::size_t i = 0; i < s.n(); ++i) {
    transformed[i] = m.evaluate(s.y[i]);
  }
  Estimate e = wald_ratio(s, transformed, "rank_2sls_complier", "rank-LATE");
  e.diagnostics["zeta"] = zeta;
  e.diagnostics["pi_a"] = cdfs.shares.pi_a;
  e.diagnostics["pi_n"] = cdfs.shares.pi_n;
  e.diagnostics["pi_c"] = cdfs.shares.pi_c;
  e.diagnostics["pi_c_clamped"] = cdfs.shares.clamped ? 1.0 : 0.0;
  return e;
}

}  // namespace rankreg
