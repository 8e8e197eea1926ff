#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rankreg/rng.hpp"
#include "rankreg/sample.hpp"

namespace rankreg::simlab {

enum class DgpKind {
  randomized_binary,
  confounded_binary,
  general_treatment,
  iv_types,
  panel_cic,
  rdd_sharp,
  coupled_potentials,
};

enum class NoiseFamily { gaussian, laplace, exponential };

// Finite Gaussian mixture; closed-form CDF and pairwise overlap make every
// estimand built from these margins exactly computable.
struct GaussMix {
  std::vector<double> weight;
  std::vector<double> mu;
  std::vector<double> sigma;

  static GaussMix normal(double mu, double sigma);
  double cdf(double y) const;
  double draw(CounterRng& rng) const;
  double quantile(double u) const;  // bisection on the cdf
};

// P(Z1 >= Z0) - 1/2 for independent draws from two Gaussian mixtures.
double gauss_mix_rank_ate(const GaussMix& f1, const GaussMix& f0);

// Strictly increasing analytic link (kept analytic rather than tabulated so
// panel oracles stay exact).
struct MonotoneLink {
  enum class Kind { identity, cube, affine };
  Kind kind = Kind::identity;
  double scale = 1.0;
  double shift = 0.0;

  double apply(double u) const;
  double inverse(double y) const;
};

struct RandomizedBinaryParams {
  double pi = 0.5;
  double mu1 = 1.0, mu0 = 0.0;
  double sigma1 = 1.0, sigma0 = 1.0;
  NoiseFamily noise = NoiseFamily::gaussian;
  std::vector<double> x_coefs;  // prognostic loadings on N(0,1) covariates
};

struct ConfoundedBinaryParams {
  double p_x1 = 0.5;
  double prop0 = 0.2, prop1 = 0.6;  // propensity per X level
  double base0 = 0.0, base1 = 1.0;  // prognostic level shift per X
  double delta0 = 0.4, delta1 = 1.2;  // treatment effect per X
  double sigma = 1.0;
};

struct GeneralTreatmentParams {
  // Discrete doses when dose_values is non-empty; otherwise continuous
  // W ~ N(w_mean, w_sd^2) with Y = mu_slope * W + sigma * eps.
  std::vector<double> dose_values;
  std::vector<double> dose_probs;
  std::vector<double> dose_means;
  double sigma = 1.0;
  double w_mean = 0.0, w_sd = 1.0, mu_slope = 1.0;
};

struct IvTypesParams {
  double q = 0.5;  // P(Z = 1)
  double pi_a = 0.2, pi_n = 0.2, pi_c = 0.6;
  GaussMix y1_c, y0_c;  // complier potential outcomes
  GaussMix y1_a;        // always-takers, observed arm
  GaussMix y0_n;        // never-takers, observed arm
};

struct PanelCicParams {
  double p_treated = 0.5;
  double u_mean1 = 1.0, u_mean0 = 0.0, u_sd = 1.0;
  MonotoneLink f0, f1;
  double effect = 1.5;  // additive on the period-1 outcome scale
  // Breaks rank parallel trend when positive: treated-only extra noise on
  // the untreated period-1 outcome.
  double violator_extra_sd = 0.0;
};

struct RddSharpParams {
  double cutoff = 0.0;   // X ~ Uniform(-1, 1)
  double a0 = 0.0, a1 = 0.5;
  double b0 = 2.0, b1 = 2.0;
  double sigma = 0.5;
  double bandwidth_constant = 0.75;  // fixture's c in h = c * sd(X) * n^(-1/5)
};

struct CoupledPotentialsParams {
  enum class Coupling { comonotone, antimonotone, independent, additive_effect };
  Coupling coupling = Coupling::independent;
  GaussMix f1, f0;  // margins (f1 ignored for additive_effect)
  // additive_effect: Y(0) ~ f0, Y(1) = Y(0) + D with
  // D = d_pos w.p. p_pos else d_neg, independent of Y(0).
  double d_neg = -0.1, d_pos = 10.0, p_pos = 0.2;
};

using DgpParams =
    std::variant<RandomizedBinaryParams, ConfoundedBinaryParams,
                 GeneralTreatmentParams, IvTypesParams, PanelCicParams,
                 RddSharpParams, CoupledPotentialsParams>;

struct DgpSpec {
  std::string name;
  DgpKind kind = DgpKind::randomized_binary;
  DgpParams params;
  std::uint64_t seed = 1;
};

// A generated dataset plus the oracle-only potential-outcome table. The
// estimators only ever see sample()/panel().
struct GeneratedData {
  Sample sample_data;
  PanelSample panel_data;
  bool is_panel = false;

  // Oracle-only columns (never fed to estimators).
  std::vector<double> pot_y1, pot_y0;  // post-period potentials for panels
  std::vector<int> iv_type;            // 0 = always, 1 = never, 2 = complier

  const Sample& sample() const;
  const PanelSample& panel() const;
};

// Deterministic given (spec.seed, stream); stream shards replications.
GeneratedData generate(const DgpSpec& spec, long n, std::uint64_t stream = 0);

}  // namespace rankreg::simlab
