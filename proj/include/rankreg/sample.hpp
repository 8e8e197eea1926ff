#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rankreg/error.hpp"

namespace rankreg {

// Columnar cross-sectional dataset. Covariates are stored as columns.
struct Sample {
  std::vector<double> y;
  std::vector<double> w;
  std::vector<std::vector<double>> x;
  std::optional<std::vector<double>> z;
  std::optional<std::vector<double>> run;

  std::size_t n() const { return y.size(); }
};

// Two-period panel: pre-period outcome, post-period outcome, treatment at
// time 1.
struct PanelSample {
  std::vector<double> y0;
  std::vector<double> y1;
  std::vector<double> w;

  std::size_t n() const { return y1.size(); }
};

// Point estimate tagged with what it estimates and how.
struct Estimate {
  double value = 0.0;
  std::string estimator;
  std::string estimand;
  long n = 0;
  std::map<std::string, double> diagnostics;
};

inline bool is_binary_column(const std::vector<double>& v) {
  for (double x : v) {
    if (x != 0.0 && x != 1.0) return false;
  }
  return true;
}

inline void require_binary(const std::vector<double>& v, const char* name) {
  if (!is_binary_column(v)) {
    fail(ErrorCode::non_binary_column,
         std::string(name) + " must contain only 0/1 values");
  }
}

// Binary column with both values present.
inline void require_variation(const std::vector<double>& v, const char* name) {
  require_binary(v, name);
  bool has0 = false, has1 = false;
  for (double x : v) (x == 1.0 ? has1 : has0) = true;
  if (!has0 || !has1) {
    fail(ErrorCode::no_variation,
         std::string(name) + " takes a single value in this sample");
  }
}

}  // namespace rankreg
