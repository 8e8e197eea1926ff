#include "rankreg/ols.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>

#include "rankreg/math_util.hpp"
#include "rankreg/ranks.hpp"

namespace rankreg {

namespace {

constexpr double kSingularRelTol = 1e-10;

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) {
    fail(ErrorCode::invalid_input, "ols_solve: empty design");
  }
  const std::size_t n = columns.front().size();
  for (const auto& col : columns) {
    if (col.size() != n) {
      fail(ErrorCode::invalid_input, "ols_solve: ragged design columns");
    }
  }
  Eigen::MatrixXd a(n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          columns[j][i];
    }
  }
  return a;
}

// Singular values of the design via the triangular factor of its pivoted QR;
// cheap for the tall-skinny designs used here.
Eigen::VectorXd design_singular_values(const Eigen::MatrixXd& a) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd r = qr.matrixR()
                          .topLeftCorner(a.cols(), a.cols())
                          .triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  return svd.singularValues();
}

void check_conditioning(const Eigen::MatrixXd& a) {
  Eigen::VectorXd sv = design_singular_values(a);
  double smax = sv(0);
  double smin = sv(sv.size() - 1);
  if (!(smin > smax * kSingularRelTol)) {
    fail(ErrorCode::singular_design,
         "design is rank-deficient (smallest singular value " +
             std::to_string(smin) + ")");
  }
}

double group_mean(const std::vector<double>& v, const std::vector<double>& w,
                  double group) {
  NeumaierSum s;
  long count = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] == group) {
      s.add(v[i]);
      ++count;
    }
  }
  return s.value() / static_cast<double>(count);
}

long group_count(const std::vector<double>& w, double group) {
  long count = 0;
  for (double x : w) count += (x == group) ? 1 : 0;
  return count;
}

std::vector<double> subset(const std::vector<double>& v,
                           const std::vector<double>& w, double group) {
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] == group) out.push_back(v[i]);
  }
  return out;
}

void check_sample(const Sample& s) {
  if (s.n() < 2) {
    fail(ErrorCode::invalid_input, "sample needs at least two units");
  }
  if (s.w.size() != s.n()) {
    fail(ErrorCode::invalid_input, "treatment column length mismatch");
  }
  for (const auto& col : s.x) {
    if (col.size() != s.n()) {
      fail(ErrorCode::invalid_input, "covariate column length mismatch");
    }
  }
}

}  // namespace

std::vector<double> ols_solve(
    const std::vector<std::vector<double>>& design_columns,
    const std::vector<double>& response) {
  Eigen::MatrixXd a = to_matrix(design_columns);
  if (response.size() != static_cast<std::size_t>(a.rows())) {
    fail(ErrorCode::invalid_input, "ols_solve: response length mismatch");
  }
  if (a.rows() < a.cols()) {
    fail(ErrorCode::invalid_input, "ols_solve: fewer rows than columns");
  }
  check_conditioning(a);
  Eigen::VectorXd b(a.rows());
  for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = response[i];
  Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
  return std::vector<double>(coef.data(), coef.data() + coef.size());
}

double design_condition_number(
    const std::vector<std::vector<double>>& design_columns) {
  Eigen::VectorXd sv = design_singular_values(to_matrix(design_columns));
  return sv(0) / sv(sv.size() - 1);
}

TreatmentTransform TreatmentTransform::identity(bool normalize) {
  TreatmentTransform t;
  t.kind = Kind::identity;
  t.normalize = normalize;
  return t;
}

TreatmentTransform TreatmentTransform::rank(bool normalize) {
  TreatmentTransform t;
  t.kind = Kind::rank;
  t.normalize = normalize;
  return t;
}

TreatmentTransform TreatmentTransform::dichotomize_at(double threshold_rank,
                                                      bool normalize) {
  TreatmentTransform t;
  t.kind = Kind::dichotomize_at;
  t.threshold_rank = threshold_rank;
  t.normalize = normalize;
  return t;
}

TreatmentTransform TreatmentTransform::step(std::vector<double> breakpoints,
                                            bool normalize) {
  TreatmentTransform t;
  t.kind = Kind::step;
  t.breakpoints = std::move(breakpoints);
  t.normalize = normalize;
  return t;
}

TreatmentTransform TreatmentTransform::custom(
    std::vector<std::pair<double, double>> table, bool normalize) {
  TreatmentTransform t;
  t.kind = Kind::custom;
  t.table = std::move(table);
  t.normalize = normalize;
  return t;
}

std::vector<double> transform_treatment(const std::vector<double>& w,
                                        const TreatmentTransform& t) {
  if (w.empty()) {
    fail(ErrorCode::invalid_input, "transform_treatment: empty treatment");
  }
  switch (t.kind) {
    case TreatmentTransform::Kind::identity:
      return w;
    case TreatmentTransform::Kind::rank:
      return normalized_ranks(w);
    case TreatmentTransform::Kind::dichotomize_at: {
      if (!(t.threshold_rank > 0.0 && t.threshold_rank < 1.0)) {
        fail(ErrorCode::invalid_input,
             "dichotomize_at: threshold_rank must lie in (0, 1)");
      }
      std::vector<double> r = normalized_ranks(w);
      for (double& v : r) v = (v > t.threshold_rank) ? 1.0 : 0.0;
      return r;
    }
    case TreatmentTransform::Kind::step: {
      if (t.breakpoints.empty()) {
        fail(ErrorCode::invalid_input, "step: no breakpoints");
      }
      for (std::size_t k = 0; k + 1 < t.breakpoints.size(); ++k) {
        if (!(t.breakpoints[k] < t.breakpoints[k + 1])) {
          fail(ErrorCode::invalid_input,
               "step: breakpoints must strictly increase");
        }
      }
      std::vector<double> r = normalized_ranks(w);
      for (double& v : r) {
        double bucket = 0.0;
        for (double b : t.breakpoints) bucket += (v > b) ? 1.0 : 0.0;
        v = bucket;
      }
      return r;
    }
    case TreatmentTransform::Kind::custom: {
      if (t.table.empty()) {
        fail(ErrorCode::invalid_input, "custom: empty table");
      }
      for (std::size_t k = 0; k + 1 < t.table.size(); ++k) {
        if (!(t.table[k].first < t.table[k + 1].first)) {
          fail(ErrorCode::invalid_input,
               "custom: table knots must strictly increase");
        }
      }
      std::vector<double> out(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        auto it = std::upper_bound(
            t.table.begin(), t.table.end(), w[i],
            [](double v, const std::pair<double, double>& kv) {
              return v < kv.first;
            });
        out[i] = (it == t.table.begin()) ? t.table.front().second
                                         : std::prev(it)->second;
      }
      return out;
    }
  }
  fail(ErrorCode::invalid_input, "transform_treatment: unknown kind");
}

Estimate rank_ols_nocov(const Sample& s) {
  check_sample(s);
  require_variation(s.w, "treatment");
  std::vector<double> r = normalized_ranks(s.y);
  long n1 = group_count(s.w, 1.0);
  long n0 = group_count(s.w, 0.0);
  Estimate e;
  e.value = group_mean(r, s.w, 1.0) - group_mean(r, s.w, 0.0);
  e.estimator = "rank_ols_nocov";
  e.estimand = "rank-ATE";
  e.n = static_cast<long>(s.n());
  e.diagnostics["n1"] = static_cast<double>(n1);
  e.diagnostics["n0"] = static_cast<double>(n0);
  return e;
}

Estimate rank_ols_refgroup(const Sample& s, RefGroup ref) {
  check_sample(s);
  require_variation(s.w, "treatment");
  if (has_ties(s.y)) {
    fail(ErrorCode::ties_present,
         "rank_ols_refgroup: reference-group identities require tie-free "
         "outcomes");
  }
  double group = (ref == RefGroup::treated) ? 1.0 : 0.0;
  std::vector<double> ref_values = subset(s.y, s.w, group);
  std::vector<int> counts = ranks_against(s.y, ref_values);
  const double nw = static_cast<double>(ref_values.size());
  std::vector<double> r(s.n());
  for (std::size_t i = 0; i < s.n(); ++i) {
    r[i] = static_cast<double>(counts[i]) / nw;
  }
  Estimate e;
  e.value = group_mean(r, s.w, 1.0) - group_mean(r, s.w, 0.0);
  e.estimator = (ref == RefGroup::treated) ? "rank_ols_refgroup_treated"
                                           : "rank_ols_refgroup_control";
  e.estimand = "rank-ATE";
  e.n = static_cast<long>(s.n());
  e.diagnostics["n1"] = static_cast<double>(group_count(s.w, 1.0));
  e.diagnostics["n0"] = static_cast<double>(group_count(s.w, 0.0));
  return e;
}

Estimate rank_ols_cov(const Sample& s, bool interact) {
  check_sample(s);
  require_variation(s.w, "treatment");
  std::vector<double> r = normalized_ranks(s.y);

  std::vector<std::vector<double>> design;
  design.push_back(std::vector<double>(s.n(), 1.0));
  design.push_back(s.w);
  for (const auto& col : s.x) design.push_back(col);
  if (interact) {
    for (const auto& col : s.x) {
      double xbar = mean(col);
      std::vector<double> inter(s.n());
      for (std::size_t i = 0; i < s.n(); ++i) {
        inter[i] = s.w[i] * (col[i] - xbar);
      }
      design.push_back(std::move(inter));
    }
  }
  std::vector<double> coef = ols_solve(design, r);
  Estimate e;
  e.value = coef[1];
  e.estimator = interact ? "rank_ols_cov_interact" : "rank_ols_cov";
  e.estimand = "rank-ATE";
  e.n = static_cast<long>(s.n());
  e.diagnostics["n1"] = static_cast<double>(group_count(s.w, 1.0));
  e.diagnostics["n0"] = static_cast<double>(group_count(s.w, 0.0));
  e.diagnostics["condition_number"] = design_condition_number(design);
  return e;
}

Estimate rank_ols_general(const Sample& s, const TreatmentTransform& t) {
  check_sample(s);
  std::vector<double> h = transform_treatment(s.w, t);
  if (std::adjacent_find(h.begin(), h.end(), std::not_equal_to<>()) ==
      h.end()) {
    fail(ErrorCode::no_variation, "transformed treatment is constant");
  }
  double kappa = 1.0;
  if (t.normalize) {
    kappa = normalization_kappa(s.w, t);
    for (double& v : h) v *= kappa;
  }
  std::vector<double> r = normalized_ranks(s.y);
  std::vector<std::vector<double>> design;
  design.push_back(std::vector<double>(s.n(), 1.0));
  design.push_back(h);
  for (const auto& col : s.x) design.push_back(col);
  std::vector<double> coef = ols_solve(design, r);
  Estimate e;
  e.value = coef[1];
  e.estimator = "rank_ols_general";
  e.estimand = "weighted-pairwise-rank-ATE";
  e.n = static_cast<long>(s.n());
  if (t.normalize) e.diagnostics["kappa_hat"] = kappa;
  e.diagnostics["condition_number"] = design_condition_number(design);
  return e;
}

double normalization_kappa(const std::vector<double>& w,
                           const TreatmentTransform& t) {
  TreatmentTransform raw = t;
  raw.normalize = false;
  std::vector<double> h = transform_treatment(w, raw);

  // h is a function of w, so grouping by distinct treatment value gives the
  // exact pair sum: sum over value pairs a > b of c_a * c_b * (h_a - h_b).
  std::map<double, std::pair<double, double>> groups;  // w -> (count, h)
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto [it, inserted] = groups.try_emplace(w[i], 0.0, h[i]);
    it->second.first += 1.0;
  }
  std::vector<std::pair<double, double>> g;  // (count, h), ascending w
  g.reserve(groups.size());
  for (const auto& [wv, ch] : groups) {
    (void)wv;
    g.push_back(ch);
  }
  NeumaierSum num, den;
  for (std::size_t a = 1; a < g.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      double pairs = g[a].first * g[b].first;
      double diff = g[a].second - g[b].second;
      num.add(pairs * diff);
      den.add(pairs * diff * diff);
    }
  }
  if (!(den.value() > 0.0)) {
    fail(ErrorCode::no_variation,
         "normalization_kappa: transformed treatment is constant");
  }
  return num.value() / den.value();
}

ConfoundedWeights confounded_weights(
    const std::vector<std::vector<double>>& x_columns,
    const std::vector<double>& propensity, double overlap_c) {
  if (x_columns.empty() || propensity.empty()) {
    fail(ErrorCode::invalid_input, "confounded_weights: empty input");
  }
  if (!(overlap_c > 0.0 && overlap_c < 0.5)) {
    fail(ErrorCode::invalid_input,
         "confounded_weights: overlap constant must lie in (0, 0.5)");
  }
  for (double p : propensity) {
    if (!(p >= overlap_c && p <= 1.0 - overlap_c)) {
      fail(ErrorCode::overlap_violation,
           "propensity outside [c, 1-c] with c = " + std::to_string(overlap_c));
    }
  }
  ConfoundedWeights out;
  out.omega_star = ols_solve(x_columns, propensity);
  const std::size_t n = propensity.size();
  out.pi_tilde.assign(n, 0.0);
  for (std::size_t j = 0; j < x_columns.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      out.pi_tilde[i] += out.omega_star[j] * x_columns[j][i];
    }
  }
  out.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.weights[i] = propensity[i] * (1.0 - out.pi_tilde[i]);
    if (out.pi_tilde[i] < 0.0 || out.pi_tilde[i] > 1.0) {
      out.projection_outside_unit_interval = true;
    }
  }
  return out;
}

}  // namespace rankreg
