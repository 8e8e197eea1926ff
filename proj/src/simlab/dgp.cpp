#include "rankreg/simlab/dgp.hpp"

#include <algorithm>
#include <cmath>

#include "rankreg/error.hpp"
#include "rankreg/math_util.hpp"

namespace rankreg::simlab {

GaussMix GaussMix::normal(double mu, double sigma) {
  GaussMix g;
  g.weight = {1.0};
  g.mu = {mu};
  g.sigma = {sigma};
  return g;
}

double GaussMix::cdf(double y) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < weight.size(); ++k) {
    acc += weight[k] * normal_cdf((y - mu[k]) / sigma[k]);
  }
  return acc;
}

double GaussMix::draw(CounterRng& rng) const {
  double u = rng.uniform();
  double z = rng.normal();
  double acc = 0.0;
  std::size_t pick = weight.size() - 1;
  for (std::size_t k = 0; k < weight.size(); ++k) {
    acc += weight[k];
    if (u < acc) {
      pick = k;
      break;
    }
  }
  return mu[pick] + sigma[pick] * z;
}

double GaussMix::quantile(double u) const {
  if (weight.size() == 1) {
    return mu[0] + sigma[0] * normal_quantile(u);
  }
  double lo = mu[0], hi = mu[0];
  for (std::size_t k = 0; k < mu.size(); ++k) {
    lo = std::min(lo, mu[k] - 12.0 * sigma[k]);
    hi = std::max(hi, mu[k] + 12.0 * sigma[k]);
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double gauss_mix_rank_ate(const GaussMix& f1, const GaussMix& f0) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f1.weight.size(); ++i) {
    for (std::size_t j = 0; j < f0.weight.size(); ++j) {
      double denom = std::sqrt(f1.sigma[i] * f1.sigma[i] +
                               f0.sigma[j] * f0.sigma[j]);
      acc += f1.weight[i] * f0.weight[j] *
             normal_cdf((f1.mu[i] - f0.mu[j]) / denom);
    }
  }
  return acc - 0.5;
}

double MonotoneLink::apply(double u) const {
  switch (kind) {
    case Kind::identity: return u;
    case Kind::cube: return scale * u * u * u + shift;
    case Kind::affine: return scale * u + shift;
  }
  return u;
}

double MonotoneLink::inverse(double y) const {
  switch (kind) {
    case Kind::identity: return y;
    case Kind::cube: return std::cbrt((y - shift) / scale);
    case Kind::affine: return (y - shift) / scale;
  }
  return y;
}

const Sample& GeneratedData::sample() const {
  if (is_panel) {
    fail(ErrorCode::invalid_spec, "this DGP produces a panel sample");
  }
  return sample_data;
}

const PanelSample& GeneratedData::panel() const {
  if (!is_panel) {
    fail(ErrorCode::invalid_spec, "this DGP produces a cross-section");
  }
  return panel_data;
}

namespace {

double draw_noise(CounterRng& rng, NoiseFamily family) {
  switch (family) {
    case NoiseFamily::gaussian: return rng.normal();
    case NoiseFamily::laplace: return rng.laplace();
    case NoiseFamily::exponential: return rng.exponential();
  }
  return 0.0;
}

GeneratedData gen_randomized_binary(const RandomizedBinaryParams& p, long n,
                                    CounterRng& rng) {
  GeneratedData out;
  Sample& s = out.sample_data;
  s.y.resize(n);
  s.w.resize(n);
  s.x.assign(p.x_coefs.size(), std::vector<double>(n));
  out.pot_y1.resize(n);
  out.pot_y0.resize(n);
  for (long i = 0; i < n; ++i) {
    double w = rng.bernoulli(p.pi) ? 1.0 : 0.0;
    double xc = 0.0;
    for (std::size_t j = 0; j < p.x_coefs.size(); ++j) {
      double xj = rng.normal();
      s.x[j][static_cast<std::size_t>(i)] = xj;
      xc += p.x_coefs[j] * xj;
    }
    double e1 = draw_noise(rng, p.noise);
    double e0 = draw_noise(rng, p.noise);
    double y1 = p.mu1 + xc + p.sigma1 * e1;
    double y0 = p.mu0 + xc + p.sigma0 * e0;
    s.w[i] = w;
    s.y[i] = (w == 1.0) ? y1 : y0;
    out.pot_y1[i] = y1;
    out.pot_y0[i] = y0;
  }
  return out;
}

GeneratedData gen_confounded_binary(const ConfoundedBinaryParams& p, long n,
                                    CounterRng& rng) {
  GeneratedData out;
  Sample& s = out.sample_data;
  s.y.resize(n);
  s.w.resize(n);
  s.x.assign(1, std::vector<double>(n));
  out.pot_y1.resize(n);
  out.pot_y0.resize(n);
  for (long i = 0; i < n; ++i) {
    double xi = rng.bernoulli(p.p_x1) ? 1.0 : 0.0;
    double prop = (xi == 1.0) ? p.prop1 : p.prop0;
    double w = rng.bernoulli(prop) ? 1.0 : 0.0;
    double base = (xi == 1.0) ? p.base1 : p.base0;
    double delta = (xi == 1.0) ? p.delta1 : p.delta0;
    double y1 = base + delta + p.sigma * rng.normal();
    double y0 = base + p.sigma * rng.normal();
    s.x[0][static_cast<std::size_t>(i)] = xi;
    s.w[i] = w;
    s.y[i] = (w == 1.0) ? y1 : y0;
    out.pot_y1[i] = y1;
    out.pot_y0[i] = y0;
  }
  return out;
}

GeneratedData gen_general_treatment(const GeneralTreatmentParams& p, long n,
                                    CounterRng& rng) {
  GeneratedData out;
  Sample& s = out.sample_data;
  s.y.resize(n);
  s.w.resize(n);
  if (!p.dose_values.empty()) {
    if (p.dose_values.size() != p.dose_probs.size() ||
        p.dose_values.size() != p.dose_means.size()) {
      fail(ErrorCode::invalid_spec, "dose arrays must have equal length");
    }
    for (long i = 0; i < n; ++i) {
      double u = rng.uniform();
      double acc = 0.0;
      std::size_t pick = p.dose_values.size() - 1;
      for (std::size_t k = 0; k < p.dose_probs.size(); ++k) {
        acc += p.dose_probs[k];
        if (u < acc) {
          pick = k;
          break;
        }
      }
      s.w[i] = p.dose_values[pick];
      s.y[i] = p.dose_means[pick] + p.sigma * rng.normal();
    }
  } else {
    for (long i = 0; i < n; ++i) {
      double w = p.w_mean + p.w_sd * rng.normal();
      s.w[i] = w;
      s.y[i] = p.mu_slope * w + p.sigma * rng.normal();
    }
  }
  return out;
}

GeneratedData gen_iv_types(const IvTypesParams& p, long n, CounterRng& rng) {
  GeneratedData out;
  Sample& s = out.sample_data;
  s.y.resize(n);
  s.w.resize(n);
  s.z = std::vector<double>(n);
  out.pot_y1.resize(n);
  out.pot_y0.resize(n);
  out.iv_type.resize(n);
  for (long i = 0; i < n; ++i) {
    double z = rng.bernoulli(p.q) ? 1.0 : 0.0;
    double u = rng.uniform();
    int g = (u < p.pi_a) ? 0 : (u < p.pi_a + p.pi_n) ? 1 : 2;
    double w = (g == 0) ? 1.0 : (g == 1) ? 0.0 : z;
    // Draw both potentials from the type's laws; never-takers reuse their
    // observed law as the unused treated potential to keep the draw count
    // fixed per unit.
    double y1 = (g == 0) ? p.y1_a.draw(rng)
               : (g == 2) ? p.y1_c.draw(rng)
                          : p.y0_n.draw(rng);
    double y0 = (g == 1) ? p.y0_n.draw(rng)
               : (g == 2) ? p.y0_c.draw(rng)
                          : p.y1_a.draw(rng);
    (*s.z)[i] = z;
    s.w[i] = w;
    s.y[i] = (w == 1.0) ? y1 : y0;
    out.pot_y1[i] = y1;
    out.pot_y0[i] = y0;
    out.iv_type[i] = g;
  }
  return out;
}

GeneratedData gen_panel_cic(const PanelCicParams& p, long n, CounterRng& rng) {
  GeneratedData out;
  out.is_panel = true;
  PanelSample& ps = out.panel_data;
  ps.y0.resize(n);
  ps.y1.resize(n);
  ps.w.resize(n);
  out.pot_y1.resize(n);
  out.pot_y0.resize(n);
  for (long i = 0; i < n; ++i) {
    double w = rng.bernoulli(p.p_treated) ? 1.0 : 0.0;
    double u = (w == 1.0 ? p.u_mean1 : p.u_mean0) + p.u_sd * rng.normal();
    double extra = rng.normal();  // drawn unconditionally, stream stability
    double y0 = p.f0.apply(u);
    double y1_untreated = p.f1.apply(u);
    if (p.violator_extra_sd > 0.0 && w == 1.0) {
      y1_untreated += p.violator_extra_sd * extra;
    }
    double y1_treated = y1_untreated + p.effect;
    ps.w[i] = w;
    ps.y0[i] = y0;
    ps.y1[i] = (w == 1.0) ? y1_treated : y1_untreated;
    out.pot_y1[i] = y1_treated;
    out.pot_y0[i] = y1_untreated;
  }
  return out;
}

GeneratedData gen_rdd_sharp(const RddSharpParams& p, long n, CounterRng& rng) {
  GeneratedData out;
  Sample& s = out.sample_data;
  s.y.resize(n);
  s.w.resize(n);
  s.run = std::vector<double>(n);
  out.pot_y1.resize(n);
  out.pot_y0.resize(n);
  for (long i = 0; i < n; ++i) {
    double x = rng.uniform(-1.0, 1.0);
    double w = (x >= p.cutoff) ? 1.0 : 0.0;
    double y1 = p.a1 + p.b1 * x + p.sigma * rng.normal();
    double y0 = p.a0 + p.b0 * x + p.sigma * rng.normal();
    (*s.run)[i] = x;
    s.w[i] = w;
    s.y[i] = (w == 1.0) ? y1 : y0;
    out.pot_y1[i] = y1;
    out.pot_y0[i] = y0;
  }
  return out;
}

GeneratedData gen_coupled(const CoupledPotentialsParams& p, long n,
                          CounterRng& rng) {
  GeneratedData out;
  Sample& s = out.sample_data;
  s.y.resize(n);
  s.w.resize(n);
  out.pot_y1.resize(n);
  out.pot_y0.resize(n);
  using C = CoupledPotentialsParams::Coupling;
  for (long i = 0; i < n; ++i) {
    double y1 = 0.0, y0 = 0.0;
    switch (p.coupling) {
      case C::comonotone: {
        double u = rng.uniform();
        y1 = p.f1.quantile(u);
        y0 = p.f0.quantile(u);
        break;
      }
      case C::antimonotone: {
        double u = rng.uniform();
        y1 = p.f1.quantile(u);
        y0 = p.f0.quantile(1.0 - u);
        break;
      }
      case C::independent:
        y1 = p.f1.draw(rng);
        y0 = p.f0.draw(rng);
        break;
      case C::additive_effect: {
        y0 = p.f0.draw(rng);
        double d = rng.bernoulli(p.p_pos) ? p.d_pos : p.d_neg;
        y1 = y0 + d;
        break;
      }
    }
    // Observational view: randomized assignment over the coupled pair.
    double w = rng.bernoulli(0.5) ? 1.0 : 0.0;
    s.w[i] = w;
    s.y[i] = (w == 1.0) ? y1 : y0;
    out.pot_y1[i] = y1;
    out.pot_y0[i] = y0;
  }
  return out;
}

}  // namespace

GeneratedData generate(const DgpSpec& spec, long n, std::uint64_t stream) {
  if (n < 2) {
    fail(ErrorCode::invalid_spec, "generate: n must be at least 2");
  }
  CounterRng rng(spec.seed, stream);
  switch (spec.kind) {
    case DgpKind::randomized_binary:
      return gen_randomized_binary(
          std::get<RandomizedBinaryParams>(spec.params), n, rng);
    case DgpKind::confounded_binary:
      return gen_confounded_binary(
          std::get<ConfoundedBinaryParams>(spec.params), n, rng);
    case DgpKind::general_treatment:
      return gen_general_treatment(
          std::get<GeneralTreatmentParams>(spec.params), n, rng);
    case DgpKind::iv_types:
      return gen_iv_types(std::get<IvTypesParams>(spec.params), n, rng);
    case DgpKind::panel_cic:
      return gen_panel_cic(std::get<PanelCicParams>(spec.params), n, rng);
    case DgpKind::rdd_sharp:
      return gen_rdd_sharp(std::get<RddSharpParams>(spec.params), n, rng);
    case DgpKind::coupled_potentials:
      return gen_coupled(std::get<CoupledPotentialsParams>(spec.params), n,
                         rng);
  }
  fail(ErrorCode::invalid_spec, "generate: unknown DGP kind");
}

}  // namespace rankreg::simlab
