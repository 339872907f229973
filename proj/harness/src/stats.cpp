#include "lipmin/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lipmin::stats {

double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.18) {
    // P(K <= x) = √(2π)/x Σ exp(-(2k-1)²π²/(8x²))
    const double c = -std::numbers::pi * std::numbers::pi / (8.0 * x * x);
    double s = 0.0;
    for (int k = 1; k <= 8; ++k) s += std::exp(c * (2 * k - 1) * (2 * k - 1));
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

namespace {

double corrected_p(double d, double n_eff) {
  const double r = std::sqrt(n_eff);
  return kolmogorov_sf((r + 0.12 + 0.11 / r) * d);
}

}  // namespace

KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.size() < 20) throw std::invalid_argument("ks_one_sample needs at least 20 samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  double prev = -1.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    if (!(f >= prev - 1e-12)) throw std::invalid_argument("ks_one_sample: cdf is not monotone");
    prev = std::max(prev, f);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  d = std::clamp(d, 0.0, 1.0);
  return {d, corrected_p(d, n)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty input");
  if (a.size() < 20 || b.size() < 20) throw std::invalid_argument("ks_two_sample needs at least 20 samples each");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  if (d == 0.0) return {0.0, 1.0};
  return {d, corrected_p(d, na * nb / (na + nb))};
}

double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

MomentResult moment_check(std::span<const double> samples, double target, double k_sigma) {
  if (samples.size() < 30) throw std::invalid_argument("moment_check needs at least 30 samples");
  MomentResult r{};
  r.n = samples.size();
  r.mean = mean(samples);
  r.se = std::sqrt(variance(samples) / static_cast<double>(r.n));
  r.target = target;
  r.k_sigma = k_sigma;
  r.pass = std::abs(r.mean - target) <= k_sigma * r.se;
  return r;
}

}  // namespace lipmin::stats
