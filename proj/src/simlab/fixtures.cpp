#include "rankreg/simlab/fixtures.hpp"

namespace rankreg::simlab::fixtures {

DgpSpec thm1_gauss_shift() {
  RandomizedBinaryParams p;
  p.pi = 0.5;
  p.mu1 = 1.0;
  p.mu0 = 0.0;
  p.sigma1 = 1.0;
  p.sigma0 = 1.0;
  return {"thm1_gauss_shift", DgpKind::randomized_binary, p, 101};
}

DgpSpec thm3_prognostic_cov() {
  RandomizedBinaryParams p;
  p.pi = 0.5;
  p.mu1 = 1.0;
  p.mu0 = 0.0;
  // Total outcome variance stays 1, so the marginal rank-ATE matches the
  // unit-Gaussian-shift value.
  p.sigma1 = 0.8;
  p.sigma0 = 0.8;
  p.x_coefs = {0.6};
  return {"thm3_prognostic_cov", DgpKind::randomized_binary, p, 103};
}

DgpSpec thm4_discrete_confounded() {
  ConfoundedBinaryParams p;
  p.p_x1 = 0.5;
  p.prop0 = 0.2;
  p.prop1 = 0.6;
  p.base0 = 0.0;
  p.base1 = 1.0;
  p.delta0 = 0.4;
  p.delta1 = 1.2;
  p.sigma = 1.0;
  return {"thm4_discrete_confounded", DgpKind::confounded_binary, p, 104};
}

DgpSpec thm5_three_dose() {
  GeneralTreatmentParams p;
  p.dose_values = {0.0, 1.0, 2.0};
  p.dose_probs = {0.3, 0.4, 0.3};
  p.dose_means = {0.0, 0.6, 2.0};
  p.sigma = 1.0;
  return {"thm5_three_dose", DgpKind::general_treatment, p, 105};
}

DgpSpec ex5_median_dichotomize() {
  GeneralTreatmentParams p;
  p.w_mean = 0.0;
  p.w_sd = 1.0;
  p.mu_slope = 1.0;
  p.sigma = 1.0;
  return {"ex5_median_dichotomize", DgpKind::general_treatment, p, 106};
}

DgpSpec thm6_iv_signflip() {
  IvTypesParams p;
  p.q = 0.5;
  p.pi_a = 0.3;
  p.pi_n = 0.3;
  p.pi_c = 0.4;
  p.y0_c = GaussMix::normal(0.0, 0.3);
  // Compliers: a thin majority of the treated mass lands far above the
  // control lump, the rest far below it; the non-complier mass between the
  // two flips the full-sample rank comparison.
  p.y1_c.weight = {0.45, 0.55};
  p.y1_c.mu = {-2.0, 3.0};
  p.y1_c.sigma = {0.3, 0.3};
  p.y1_a = GaussMix::normal(-1.0, 0.3);
  p.y0_n = GaussMix::normal(-1.5, 0.3);
  return {"thm6_iv_signflip", DgpKind::iv_types, p, 107};
}

DgpSpec iv_perfect_compliance() {
  IvTypesParams p;
  p.q = 0.5;
  p.pi_a = 0.0;
  p.pi_n = 0.0;
  p.pi_c = 1.0;
  p.y1_c = GaussMix::normal(1.0, 1.0);
  p.y0_c = GaussMix::normal(0.0, 1.0);
  p.y1_a = GaussMix::normal(0.0, 1.0);
  p.y0_n = GaussMix::normal(0.0, 1.0);
  return {"iv_perfect_compliance", DgpKind::iv_types, p, 108};
}

DgpSpec iv_mixed_types() {
  IvTypesParams p;
  p.q = 0.5;
  p.pi_a = 0.3;
  p.pi_n = 0.2;
  p.pi_c = 0.5;
  p.y1_c = GaussMix::normal(1.0, 1.0);
  p.y0_c = GaussMix::normal(0.0, 1.0);
  p.y1_a = GaussMix::normal(0.5, 1.0);
  p.y0_n = GaussMix::normal(-0.5, 1.0);
  return {"iv_mixed_types", DgpKind::iv_types, p, 114};
}

DgpSpec ex7_panel_cic() {
  PanelCicParams p;
  p.p_treated = 0.5;
  p.u_mean1 = 1.0;
  p.u_mean0 = 0.0;
  p.u_sd = 1.0;
  p.f0.kind = MonotoneLink::Kind::identity;
  p.f1.kind = MonotoneLink::Kind::cube;
  p.effect = 1.5;
  return {"ex7_panel_cic", DgpKind::panel_cic, p, 109};
}

DgpSpec panel_rank_pt_violator() {
  PanelCicParams p;
  p.p_treated = 0.5;
  p.u_mean1 = 1.0;
  p.u_mean0 = 0.0;
  p.u_sd = 1.0;
  p.f0.kind = MonotoneLink::Kind::identity;
  p.f1.kind = MonotoneLink::Kind::identity;
  p.effect = 1.0;
  p.violator_extra_sd = 1.5;
  return {"panel_rank_pt_violator", DgpKind::panel_cic, p, 110};
}

DgpSpec thm11_rdd() {
  RddSharpParams p;
  p.cutoff = 0.0;
  p.a0 = 0.0;
  p.a1 = 0.5;
  p.b0 = 2.0;
  p.b1 = 2.0;
  p.sigma = 0.5;
  p.bandwidth_constant = 0.75;
  return {"thm11_rdd", DgpKind::rdd_sharp, p, 111};
}

DgpSpec ex3_dominance() {
  RandomizedBinaryParams p;
  p.pi = 0.5;
  p.mu1 = 0.3;
  p.mu0 = 0.0;
  return {"ex3_dominance", DgpKind::randomized_binary, p, 112};
}

DgpSpec hand_paradox() {
  CoupledPotentialsParams p;
  p.coupling = CoupledPotentialsParams::Coupling::additive_effect;
  p.f0 = GaussMix::normal(0.0, 1.0);
  p.f1 = GaussMix::normal(0.0, 1.0);  // unused for this coupling
  p.d_neg = -0.1;
  p.d_pos = 10.0;
  p.p_pos = 0.2;
  return {"hand_paradox", DgpKind::coupled_potentials, p, 113};
}

DgpSpec coupled_margins(int i) {
  static const double mus[5] = {-1.0, -0.3, 0.0, 0.6, 1.2};
  static const double sigmas[4] = {0.5, 1.0, 2.0, 3.0};
  int im = i % 5;
  int is = (i / 5) % 4;
  CoupledPotentialsParams p;
  p.coupling = CoupledPotentialsParams::Coupling::independent;
  p.f0 = GaussMix::normal(0.0, 1.0);
  if (i % 4 == 3) {
    p.f1.weight = {0.5, 0.5};
    p.f1.mu = {mus[im] - 1.0, mus[im] + 1.0};
    p.f1.sigma = {0.7 * sigmas[is], 0.7 * sigmas[is]};
  } else {
    p.f1 = GaussMix::normal(mus[im], sigmas[is]);
  }
  return {"coupled_margins_" + std::to_string(i),
          DgpKind::coupled_potentials, p,
          400 + static_cast<std::uint64_t>(i)};
}

DgpSpec with_coupling(DgpSpec spec,
                      CoupledPotentialsParams::Coupling coupling) {
  auto& p = std::get<CoupledPotentialsParams>(spec.params);
  p.coupling = coupling;
  switch (coupling) {
    case CoupledPotentialsParams::Coupling::comonotone:
      spec.name += "/comonotone";
      break;
    case CoupledPotentialsParams::Coupling::antimonotone:
      spec.name += "/antimonotone";
      break;
    case CoupledPotentialsParams::Coupling::independent:
      spec.name += "/independent";
      break;
    case CoupledPotentialsParams::Coupling::additive_effect:
      spec.name += "/additive_effect";
      break;
  }
  return spec;
}

std::optional<DgpSpec> fixture_by_name(const std::string& name) {
  if (name == "thm1_gauss_shift") return thm1_gauss_shift();
  if (name == "thm3_prognostic_cov") return thm3_prognostic_cov();
  if (name == "thm4_discrete_confounded") return thm4_discrete_confounded();
  if (name == "thm5_three_dose") return thm5_three_dose();
  if (name == "ex5_median_dichotomize") return ex5_median_dichotomize();
  if (name == "thm6_iv_signflip") return thm6_iv_signflip();
  if (name == "iv_perfect_compliance") return iv_perfect_compliance();
  if (name == "iv_mixed_types") return iv_mixed_types();
  if (name == "ex7_panel_cic") return ex7_panel_cic();
  if (name == "panel_rank_pt_violator") return panel_rank_pt_violator();
  if (name == "thm11_rdd") return thm11_rdd();
  if (name == "ex3_dominance") return ex3_dominance();
  if (name == "hand_paradox") return hand_paradox();
  return std::nullopt;
}

}  // namespace rankreg::simlab::fixtures
