#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace rankreg {

inline double normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

// Inverse standard normal CDF: Acklam's rational approximation with one
// Halley refinement, accurate to ~1e-15 over (0, 1).
double normal_quantile(double p);

// Neumaier compensated summation; keeps long rank sums exact enough for the
// 1e-12 identity checks.
class NeumaierSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(const std::vector<double>& v) {
  NeumaierSum s;
  for (double x : v) s.add(x);
  return s.value();
}

inline double mean(const std::vector<double>& v) {
  return compensated_sum(v) / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean(v);
  NeumaierSum s;
  for (double x : v) s.add((x - m) * (x - m));
  return std::sqrt(s.value() / static_cast<double>(v.size() - 1));
}

// Adaptive Simpson quadrature on [a, b]; `knots` marks interior points where
// the integrand has kinks so the recursion splits there first.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-10,
                          const std::vector<double>& knots = {});

}  // namespace rankreg
