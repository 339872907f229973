#pragma once

// Reference distribution functions written from textbook formulas, independent
// of the library's own normal-tail code.
#include <cmath>
#include <numbers>
#include <vector>

namespace testing_oracle {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double chi2_3_cdf(double x) {
  if (x <= 0.0) return 0.0;
  const double r = std::sqrt(x);
  return std::erf(r / std::numbers::sqrt2) - std::sqrt(2.0 * x / std::numbers::pi) * std::exp(-0.5 * x);
}

inline double exponential_cdf(double rate, double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); }

inline double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

inline double standard_error(const std::vector<double>& x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  const double n = static_cast<double>(x.size());
  return std::sqrt(s / (n - 1.0) / n);
}

}  // namespace testing_oracle
