#include "rankreg/step_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rankreg/error.hpp"
#include "rankreg/math_util.hpp"

namespace rankreg {

namespace {
constexpr double kCdfTol = 1e-12;
}

StepCDF::StepCDF(std::vector<double> support, std::vector<double> cum)
    : support_(std::move(support)), cum_(std::move(cum)) {
  if (support_.empty() || support_.size() != cum_.size()) {
    fail(ErrorCode::invalid_input,
         "StepCDF needs equal-length, non-empty support and cum");
  }
  for (std::size_t i = 0; i + 1 < support_.size(); ++i) {
    if (!(support_[i] < support_[i + 1])) {
      fail(ErrorCode::invalid_input, "StepCDF support must strictly increase");
    }
    if (cum_[i] > cum_[i + 1] + kCdfTol) {
      fail(ErrorCode::invalid_input, "StepCDF cum must be non-decreasing");
    }
  }
  if (cum_.front() < -kCdfTol) {
    fail(ErrorCode::invalid_input, "StepCDF cum must start at >= 0");
  }
  if (std::abs(cum_.back() - 1.0) > kCdfTol) {
    fail(ErrorCode::invalid_input, "StepCDF cum must end at 1");
  }
  for (double y : support_) {
    if (!std::isfinite(y)) {
      fail(ErrorCode::invalid_input, "StepCDF support must be finite");
    }
  }
}

double StepCDF::evaluate(double y) const {
  // Largest support point <= y.
  auto it = std::upper_bound(support_.begin(), support_.end(), y);
  if (it == support_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double StepCDF::evaluate_left(double y) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), y);
  if (it == support_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

StepCDF ecdf(const std::vector<double>& values) {
  if (values.empty()) {
    fail(ErrorCode::invalid_input, "ecdf: empty input");
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> support;
  std::vector<double> cum;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 == sorted.size() || sorted[i + 1] != sorted[i]) {
      support.push_back(sorted[i]);
      cum.push_back(static_cast<double>(i + 1) / n);
    }
  }
  return StepCDF(std::move(support), std::move(cum));
}

StepCDF mixture(const std::vector<std::pair<double, StepCDF>>& components) {
  if (components.empty()) {
    fail(ErrorCode::invalid_input, "mixture: no components");
  }
  double wsum = 0.0;
  for (const auto& [w, f] : components) {
    (void)f;
    if (w < 0.0) fail(ErrorCode::invalid_input, "mixture: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > kCdfTol) {
    fail(ErrorCode::invalid_input, "mixture: weights must sum to 1");
  }
  std::set<double> merged;
  for (const auto& [w, f] : components) {
    (void)w;
    merged.insert(f.support().begin(), f.support().end());
  }
  std::vector<double> support(merged.begin(), merged.end());
  std::vector<double> cum(support.size(), 0.0);
  for (const auto& [w, f] : components) {
    for (std::size_t k = 0; k < support.size(); ++k) {
      cum[k] += w * f.evaluate(support[k]);
    }
  }
  // Guard the trailing value against rounding drift.
  cum.back() = 1.0;
  return StepCDF(std::move(support), std::move(cum));
}

double generalized_inverse(const StepCDF& f, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    fail(ErrorCode::invalid_input, "generalized_inverse: u outside [0, 1]");
  }
  const auto& cum = f.cum();
  auto it = std::lower_bound(cum.begin(), cum.end(), u);
  if (it == cum.end()) return f.support().back();
  return f.support()[static_cast<std::size_t>(it - cum.begin())];
}

StepCDF project_to_cdf(std::vector<double> support, std::vector<double> raw) {
  if (support.empty() || support.size() != raw.size()) {
    fail(ErrorCode::invalid_input,
         "project_to_cdf: support and raw must match and be non-empty");
  }
  // Pool-adjacent-violators, equal weights.
  std::vector<double> level;
  std::vector<double> weight;
  level.reserve(raw.size());
  weight.reserve(raw.size());
  for (double v : raw) {
    level.push_back(v);
    weight.push_back(1.0);
    while (level.size() >= 2 && level[level.size() - 2] > level.back()) {
      double w2 = weight.back(), v2 = level.back();
      level.pop_back();
      weight.pop_back();
      double w1 = weight.back(), v1 = level.back();
      level.back() = (w1 * v1 + w2 * v2) / (w1 + w2);
      weight.back() = w1 + w2;
    }
  }
  std::vector<double> iso;
  iso.reserve(raw.size());
  for (std::size_t b = 0; b < level.size(); ++b) {
    for (int k = 0; k < static_cast<int>(weight[b]); ++k) iso.push_back(level[b]);
  }
  for (double& v : iso) v = std::clamp(v, 0.0, 1.0);
  double last = iso.back();
  if (last <= 0.0) {
    fail(ErrorCode::degenerate_distribution,
         "project_to_cdf: projected CDF is identically zero");
  }
  if (last != 1.0) {
    for (double& v : iso) v /= last;
  }
  iso.back() = 1.0;
  return StepCDF(std::move(support), std::move(iso));
}

double rank_ate(const StepCDF& f1, const StepCDF& f0) {
  NeumaierSum acc;
  for (std::size_t k = 0; k < f1.size(); ++k) {
    acc.add(f1.mass(k) * f0.evaluate(f1.support()[k]));
  }
  return acc.value() - 0.5;
}

double rank_ate_pairs(const std::vector<double>& y1,
                      const std::vector<double>& y0) {
  if (y1.empty() || y0.empty()) {
    fail(ErrorCode::invalid_input, "rank_ate_pairs: empty sample");
  }
  std::vector<double> s0 = y0;
  std::sort(s0.begin(), s0.end());
  double count = 0.0;  // pair counts stay integral, exact up to 2^53
  for (double v : y1) {
    count += static_cast<double>(
        std::upper_bound(s0.begin(), s0.end(), v) - s0.begin());
  }
  return count / (static_cast<double>(y1.size()) *
                  static_cast<double>(y0.size())) -
         0.5;
}

IdentifiedSet fan_park_bounds(const StepCDF& f1, const StepCDF& f0) {
  std::set<double> merged(f1.support().begin(), f1.support().end());
  merged.insert(f0.support().begin(), f0.support().end());
  double sup = 0.0;
  double inf = 0.0;
  for (double y : merged) {
    double g = f0.evaluate(y) - f1.evaluate(y);
    double g_left = f0.evaluate_left(y) - f1.evaluate_left(y);
    sup = std::max({sup, g, g_left});
    inf = std::min({inf, g, g_left});
  }
  IdentifiedSet set;
  set.lower = std::max(sup, 0.0) - 0.5;
  set.upper = std::min(inf, 0.0) + 0.5;
  return set;
}

}  // namespace rankreg
