#include "rankreg/simlab/oracle.hpp"

#include <cmath>
#include <functional>

#include "rankreg/error.hpp"
#include "rankreg/math_util.hpp"

namespace rankreg::simlab {

const char* oracle_method_name(OracleMethod m) {
  switch (m) {
    case OracleMethod::closed_form: return "closed_form";
    case OracleMethod::pair_u_statistic: return "pair_u_statistic";
    case OracleMethod::numeric_integration: return "numeric_integration";
  }
  return "unknown";
}

namespace {

constexpr double kClosedFormPrecision = 1e-9;
constexpr double kQuadPrecision = 1e-7;
constexpr long kOracleDraws = 1'000'000;

OracleValue closed(const std::string& estimand, double value) {
  return {estimand, value, OracleMethod::closed_form, kClosedFormPrecision};
}

OracleValue quad(const std::string& estimand, double value) {
  return {estimand, value, OracleMethod::numeric_integration, kQuadPrecision};
}

[[noreturn]] void bad_combination(const DgpSpec& spec,
                                  const std::string& estimand) {
  fail(ErrorCode::invalid_spec,
       "estimand '" + estimand + "' undefined for DGP '" + spec.name + "'");
}

// Monte Carlo mean of a bounded statistic with empirical 3-sigma precision.
OracleValue mc_mean(const std::string& estimand,
                    const std::function<double(CounterRng&)>& stat,
                    std::uint64_t seed) {
  CounterRng rng(seed, 0xFACADE);
  NeumaierSum sum, sumsq;
  for (long i = 0; i < kOracleDraws; ++i) {
    double v = stat(rng);
    sum.add(v);
    sumsq.add(v * v);
  }
  double m = sum.value() / kOracleDraws;
  double var = sumsq.value() / kOracleDraws - m * m;
  double se = std::sqrt(std::max(var, 0.0) / kOracleDraws);
  return {estimand, m, OracleMethod::pair_u_statistic, 3.0 * se};
}

GaussMix marginal_y1(const RandomizedBinaryParams& p) {
  double extra = 0.0;
  for (double c : p.x_coefs) extra += c * c;
  return GaussMix::normal(p.mu1, std::sqrt(p.sigma1 * p.sigma1 + extra));
}

GaussMix marginal_y0(const RandomizedBinaryParams& p) {
  double extra = 0.0;
  for (double c : p.x_coefs) extra += c * c;
  return GaussMix::normal(p.mu0, std::sqrt(p.sigma0 * p.sigma0 + extra));
}

// Concatenate mixtures with outer weights.
GaussMix combine(const std::vector<std::pair<double, const GaussMix*>>& parts) {
  GaussMix out;
  for (const auto& [w, g] : parts) {
    for (std::size_t k = 0; k < g->weight.size(); ++k) {
      out.weight.push_back(w * g->weight[k]);
      out.mu.push_back(g->mu[k]);
      out.sigma.push_back(g->sigma[k]);
    }
  }
  return out;
}

GaussMix shift_mix(const GaussMix& g, double shift) {
  GaussMix out = g;
  for (double& m : out.mu) m += shift;
  return out;
}

OracleValue randomized_binary_oracle(const DgpSpec& spec,
                                     const RandomizedBinaryParams& p,
                                     const std::string& estimand) {
  if (estimand != "rank_ate") bad_combination(spec, estimand);
  if (p.noise == NoiseFamily::gaussian) {
    return closed(estimand,
                  gauss_mix_rank_ate(marginal_y1(p), marginal_y0(p)));
  }
  // Non-Gaussian noise: pair U-statistic on fresh potential-outcome draws.
  auto stat = [&p](CounterRng& rng) {
    double xc = 0.0;
    for (double c : p.x_coefs) xc += c * rng.normal();
    double xc2 = 0.0;
    for (double c : p.x_coefs) xc2 += c * rng.normal();
    auto noise = [&rng, &p]() {
      switch (p.noise) {
        case NoiseFamily::gaussian: return rng.normal();
        case NoiseFamily::laplace: return rng.laplace();
        case NoiseFamily::exponential: return rng.exponential();
      }
      return 0.0;
    };
    double z1 = p.mu1 + xc + p.sigma1 * noise();
    double z0 = p.mu0 + xc2 + p.sigma0 * noise();
    return (z1 >= z0) ? 0.5 : -0.5;  // I(z1 >= z0) - 1/2
  };
  return mc_mean(estimand, stat, spec.seed);
}

OracleValue confounded_binary_oracle(const DgpSpec& spec,
                                     const ConfoundedBinaryParams& p,
                                     const std::string& estimand) {
  if (estimand != "thm4_weighted_rank_ate") bad_combination(spec, estimand);
  // Saturated dummy design: the projected propensity equals the propensity,
  // so the weights are pi(x)(1 - pi(x)) and everything enumerates.
  double sqrt2sig = std::sqrt(2.0) * p.sigma;
  double tau0 = normal_cdf(p.delta0 / sqrt2sig) - 0.5;
  double tau1 = normal_cdf(p.delta1 / sqrt2sig) - 0.5;
  double w0 = p.prop0 * (1.0 - p.prop0);
  double w1 = p.prop1 * (1.0 - p.prop1);
  double p0 = 1.0 - p.p_x1, p1 = p.p_x1;
  double value = (p0 * w0 * tau0 + p1 * w1 * tau1) / (p0 * w0 + p1 * w1);
  return closed(estimand, value);
}

OracleValue general_treatment_oracle(const DgpSpec& spec,
                                     const GeneralTreatmentParams& p,
                                     const std::string& estimand) {
  if (estimand == "thm5_beta_h_identity") {
    if (p.dose_values.empty()) bad_combination(spec, estimand);
    // Enumerate dose pairs w > w~ with b = h(w) - h(w~) under h = identity.
    double num = 0.0, den = 0.0;
    double sqrt2sig = std::sqrt(2.0) * p.sigma;
    for (std::size_t a = 0; a < p.dose_values.size(); ++a) {
      for (std::size_t b = 0; b < p.dose_values.size(); ++b) {
        if (!(p.dose_values[a] > p.dose_values[b])) continue;
        double pw = p.dose_probs[a] * p.dose_probs[b];
        double diff = p.dose_values[a] - p.dose_values[b];
        double tau =
            normal_cdf((p.dose_means[a] - p.dose_means[b]) / sqrt2sig) - 0.5;
        num += pw * diff * tau;
        den += pw * diff * diff;
      }
    }
    if (den <= 0.0) bad_combination(spec, estimand);
    return closed(estimand, num / den);
  }
  if (estimand == "median_dichotomize_rank_ate") {
    if (!p.dose_values.empty()) bad_combination(spec, estimand);
    // tau_r(F_{Y|W>m}, F_{Y|W<m}) with m the true treatment median:
    // Rao-Blackwellized over the outcome noises.
    double slope_sd = p.mu_slope * p.w_sd;
    double sig = p.sigma * std::sqrt(2.0);
    auto stat = [slope_sd, sig](CounterRng& rng) {
      double g = slope_sd * (std::abs(rng.normal()) + std::abs(rng.normal()));
      return normal_cdf(g / sig) - 0.5;
    };
    return mc_mean(estimand, stat, spec.seed);
  }
  bad_combination(spec, estimand);
}

OracleValue iv_types_oracle(const DgpSpec& spec, const IvTypesParams& p,
                            const std::string& estimand) {
  if (estimand == "rank_late") {
    return closed(estimand, gauss_mix_rank_ate(p.y1_c, p.y0_c));
  }
  GaussMix f_y = combine({{p.pi_a, &p.y1_a},
                          {p.pi_n, &p.y0_n},
                          {p.pi_c * p.q, &p.y1_c},
                          {p.pi_c * (1.0 - p.q), &p.y0_c}});
  double pw1 = p.pi_a + p.q * p.pi_c;
  GaussMix f_y_w1 = combine(
      {{p.pi_a / pw1, &p.y1_a}, {p.q * p.pi_c / pw1, &p.y1_c}});
  double pw0 = p.pi_n + (1.0 - p.q) * p.pi_c;
  GaussMix f_y_w0 = combine(
      {{p.pi_n / pw0, &p.y0_n}, {(1.0 - p.q) * p.pi_c / pw0, &p.y0_c}});
  if (estimand == "thm6_2sls_all") {
    return closed(estimand, gauss_mix_rank_ate(p.y1_c, f_y) -
                                gauss_mix_rank_ate(p.y0_c, f_y));
  }
  if (estimand == "thm6_2sls_treated") {
    return closed(estimand, gauss_mix_rank_ate(p.y1_c, f_y_w1) -
                                gauss_mix_rank_ate(p.y0_c, f_y_w1));
  }
  if (estimand == "thm6_2sls_control") {
    return closed(estimand, gauss_mix_rank_ate(p.y1_c, f_y_w0) -
                                gauss_mix_rank_ate(p.y0_c, f_y_w0));
  }
  bad_combination(spec, estimand);
}

// tau_r between two linked-Gaussian laws: Z_a = link(U_a) + shift_a with
// U_a ~ N(m_a, s^2); second argument analogous with zero shift.
double linked_gauss_tau(const MonotoneLink& link_a, double m_a, double shift_a,
                        const MonotoneLink& link_b, double m_b, double s) {
  auto fb = [&](double y) {
    return normal_cdf((link_b.inverse(y) - m_b) / s);
  };
  auto integrand = [&](double u) {
    return fb(link_a.apply(u) + shift_a) * normal_pdf((u - m_a) / s) / s;
  };
  // The cube inverse has an interior kink where its argument crosses zero.
  std::vector<double> knots;
  if (link_b.kind == MonotoneLink::Kind::cube) {
    // link_a(u) + shift_a == link_b-zero-point (= shift_b of the cube)
    double target = link_b.shift;
    double arg = link_a.inverse(target - shift_a);
    if (std::isfinite(arg)) knots.push_back(arg);
  }
  double lo = m_a - 12.0 * s, hi = m_a + 12.0 * s;
  return integrate_adaptive(integrand, lo, hi, 1e-10, knots) - 0.5;
}

OracleValue panel_cic_oracle(const DgpSpec& spec, const PanelCicParams& p,
                             const std::string& estimand) {
  const bool violator = p.violator_extra_sd > 0.0;
  if (violator) {
    // Supported only for affine/identity links, where every law stays
    // Gaussian.
    if (p.f1.kind == MonotoneLink::Kind::cube) {
      fail(ErrorCode::invalid_spec,
           "violator oracle requires an affine period-1 link");
    }
    double a = (p.f1.kind == MonotoneLink::Kind::identity) ? 1.0 : p.f1.scale;
    double b = (p.f1.kind == MonotoneLink::Kind::identity) ? 0.0 : p.f1.shift;
    double sd1 = std::sqrt(a * a * p.u_sd * p.u_sd +
                           p.violator_extra_sd * p.violator_extra_sd);
    GaussMix y10_w1 = GaussMix::normal(a * p.u_mean1 + b, sd1);
    GaussMix y10_w0 = GaussMix::normal(a * p.u_mean0 + b, a * p.u_sd);
    if (estimand == "rank_pt_lhs") {
      return closed(estimand, gauss_mix_rank_ate(y10_w1, y10_w0));
    }
    if (estimand == "rank_pt_rhs") {
      return closed(estimand,
                    normal_cdf((p.u_mean1 - p.u_mean0) /
                               (std::sqrt(2.0) * p.u_sd)) -
                        0.5);
    }
    bad_combination(spec, estimand);
  }
  // Rank parallel trend holds by construction: both sides reduce to the
  // rank-ATE of the confounder by monotone invariance.
  double pt_side =
      normal_cdf((p.u_mean1 - p.u_mean0) / (std::sqrt(2.0) * p.u_sd)) - 0.5;
  if (estimand == "rank_pt_lhs" || estimand == "rank_pt_rhs") {
    return closed(estimand, pt_side);
  }
  if (estimand == "rank_att") {
    return quad(estimand, linked_gauss_tau(p.f1, p.u_mean1, p.effect, p.f1,
                                           p.u_mean1, p.u_sd));
  }
  if (estimand == "thm9_did_limit") {
    double term1 = linked_gauss_tau(p.f1, p.u_mean1, p.effect, p.f1,
                                    p.u_mean0, p.u_sd);
    return quad(estimand, term1 - pt_side);
  }
  if (estimand == "alt_rank_pt_w1") {
    return quad(estimand, linked_gauss_tau(p.f1, p.u_mean1, 0.0, p.f0,
                                           p.u_mean1, p.u_sd));
  }
  if (estimand == "alt_rank_pt_w0") {
    return quad(estimand, linked_gauss_tau(p.f1, p.u_mean0, 0.0, p.f0,
                                           p.u_mean0, p.u_sd));
  }
  bad_combination(spec, estimand);
}

OracleValue rdd_sharp_oracle(const DgpSpec& spec, const RddSharpParams& p,
                             const std::string& estimand) {
  if (estimand == "cutoff_rank_ate") {
    return closed(estimand,
                  normal_cdf((p.a1 - p.a0) / (std::sqrt(2.0) * p.sigma)) -
                      0.5);
  }
  // Integral of Phi((y - a - b x)/sigma) over x in [l, u]; antiderivative of
  // Phi is G(t) = t Phi(t) + phi(t).
  auto phi_int = [&](double y, double a, double b, double l, double u) {
    if (b == 0.0) return (u - l) * normal_cdf((y - a) / p.sigma);
    auto g = [](double t) { return t * normal_cdf(t) + normal_pdf(t); };
    double tl = (y - a - b * l) / p.sigma;
    double tu = (y - a - b * u) / p.sigma;
    return (p.sigma / b) * (g(tl) - g(tu));
  };
  // Marginals of the observed outcome given the side of the cutoff
  // (X ~ Uniform(-1,1), cutoff assumed interior).
  double c = p.cutoff;
  auto f_y_above = [&](double y) {
    return phi_int(y, p.a1, p.b1, c, 1.0) / (1.0 - c);
  };
  auto f_y_below = [&](double y) {
    return phi_int(y, p.a0, p.b0, -1.0, c) / (c + 1.0);
  };
  double p_above = (1.0 - c) / 2.0;
  auto f_y = [&](double y) {
    return p_above * f_y_above(y) + (1.0 - p_above) * f_y_below(y);
  };
  auto tau_vs = [&](double a_w, const std::function<double(double)>& ref) {
    auto integrand = [&](double z) {
      return ref(z) * normal_pdf((z - a_w) / p.sigma) / p.sigma;
    };
    double span = 12.0 * p.sigma + std::abs(p.b0) + std::abs(p.b1) + 1.0;
    return integrate_adaptive(integrand, a_w - span, a_w + span, 1e-10) - 0.5;
  };
  if (estimand == "thm11_rdd_all") {
    return quad(estimand, tau_vs(p.a1, f_y) - tau_vs(p.a0, f_y));
  }
  if (estimand == "thm11_rdd_treated") {
    return quad(estimand, tau_vs(p.a1, f_y_above) - tau_vs(p.a0, f_y_above));
  }
  if (estimand == "thm11_rdd_control") {
    return quad(estimand, tau_vs(p.a1, f_y_below) - tau_vs(p.a0, f_y_below));
  }
  bad_combination(spec, estimand);
}

OracleValue coupled_oracle(const DgpSpec& spec,
                           const CoupledPotentialsParams& p,
                           const std::string& estimand) {
  using C = CoupledPotentialsParams::Coupling;
  GaussMix f1 = p.f1;
  if (p.coupling == C::additive_effect) {
    GaussMix lo = shift_mix(p.f0, p.d_neg);
    GaussMix hi = shift_mix(p.f0, p.d_pos);
    f1 = combine({{1.0 - p.p_pos, &lo}, {p.p_pos, &hi}});
  }
  if (estimand == "tau_r") {
    return closed(estimand, gauss_mix_rank_ate(f1, p.f0));
  }
  if (estimand == "tau_star") {
    switch (p.coupling) {
      case C::independent:
        return closed(estimand, gauss_mix_rank_ate(f1, p.f0));
      case C::additive_effect: {
        double v = p.p_pos * (p.d_pos >= 0.0 ? 1.0 : 0.0) +
                   (1.0 - p.p_pos) * (p.d_neg >= 0.0 ? 1.0 : 0.0) - 0.5;
        return closed(estimand, v);
      }
      case C::comonotone:
      case C::antimonotone: {
        // Change of variables y = Q0(u):
        //   comonotone:  P(Q1(U) >= Q0(U))   = Int 1{F1(y) <= F0(y)}   dF0(y)
        //   antimonotone: P(Q1(U) >= Q0(1-U)) = Int 1{F1(y)+F0(y) <= 1} dF0(y)
        // evaluated on a fine midpoint grid with the analytic mixture CDFs.
        double lo = f1.mu[0], hi = f1.mu[0];
        for (std::size_t k = 0; k < f1.mu.size(); ++k) {
          lo = std::min(lo, f1.mu[k] - 12.0 * f1.sigma[k]);
          hi = std::max(hi, f1.mu[k] + 12.0 * f1.sigma[k]);
        }
        for (std::size_t k = 0; k < p.f0.mu.size(); ++k) {
          lo = std::min(lo, p.f0.mu[k] - 12.0 * p.f0.sigma[k]);
          hi = std::max(hi, p.f0.mu[k] + 12.0 * p.f0.sigma[k]);
        }
        const long grid = 2'000'000;
        const double dy = (hi - lo) / grid;
        NeumaierSum acc;
        for (long k = 0; k < grid; ++k) {
          double y = lo + (static_cast<double>(k) + 0.5) * dy;
          bool in_set = (p.coupling == C::comonotone)
                            ? (f1.cdf(y) <= p.f0.cdf(y))
                            : (f1.cdf(y) + p.f0.cdf(y) <= 1.0);
          if (!in_set) continue;
          double dens = 0.0;
          for (std::size_t j = 0; j < p.f0.weight.size(); ++j) {
            dens += p.f0.weight[j] *
                    normal_pdf((y - p.f0.mu[j]) / p.f0.sigma[j]) /
                    p.f0.sigma[j];
          }
          acc.add(dens * dy);
        }
        return {estimand, acc.value() - 0.5,
                OracleMethod::numeric_integration, 1e-4};
      }
    }
    bad_combination(spec, estimand);
  }
  bad_combination(spec, estimand);
}

}  // namespace

OracleValue oracle_estimand(const DgpSpec& spec, const std::string& estimand) {
  switch (spec.kind) {
    case DgpKind::randomized_binary:
      return randomized_binary_oracle(
          spec, std::get<RandomizedBinaryParams>(spec.params), estimand);
    case DgpKind::confounded_binary:
      return confounded_binary_oracle(
          spec, std::get<ConfoundedBinaryParams>(spec.params), estimand);
    case DgpKind::general_treatment:
      return general_treatment_oracle(
          spec, std::get<GeneralTreatmentParams>(spec.params), estimand);
    case DgpKind::iv_types:
      return iv_types_oracle(spec, std::get<IvTypesParams>(spec.params),
                             estimand);
    case DgpKind::panel_cic:
      return panel_cic_oracle(spec, std::get<PanelCicParams>(spec.params),
                              estimand);
    case DgpKind::rdd_sharp:
      return rdd_sharp_oracle(spec, std::get<RddSharpParams>(spec.params),
                              estimand);
    case DgpKind::coupled_potentials:
      return coupled_oracle(spec,
                            std::get<CoupledPotentialsParams>(spec.params),
                            estimand);
  }
  fail(ErrorCode::invalid_spec, "oracle_estimand: unknown DGP kind");
}

}  // namespace rankreg::simlab
