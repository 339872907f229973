#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lipmin::stats {

struct KsResult {
  double statistic;
  double p;
};

/// P(K > x) for the Kolmogorov distribution.
double kolmogorov_sf(double x);

/// One-sample KS with the Stephens small-sample correction of the asymptotic p.
/// Throws std::invalid_argument for fewer than 20 samples or when the cdf
/// decreases along the sorted sample.
KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS (asymptotic p with effective size nm/(n+m)).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct MomentResult {
  double mean;
  double se;
  double target;
  double k_sigma;
  std::size_t n;
  bool pass;
};

/// |mean - target| <= k_sigma·SD/√N. Throws std::invalid_argument for N < 30.
MomentResult moment_check(std::span<const double> samples, double target, double k_sigma = 3.0);

double mean(std::span<const double> x);
/// Unbiased sample variance.
double variance(std::span<const double> x);

}  // namespace lipmin::stats
