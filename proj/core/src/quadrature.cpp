#include "lipmin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lipmin::quad {

Result integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  if (std::isinf(a) || std::isinf(b)) {
    const double v = GK::integrate(f, a, b, 20, tol, &err);
    return {v, err};
  }
  // Boost compares an error estimate in [-1, 1] units against a tolerance in
  // [a, b] units, so short intervals never converge. Integrate on [0, 1].
  const double w = b - a;
  auto g = [&f, a, w](double s) { return f(a + w * s); };
  const double v = GK::integrate(g, 0.0, 1.0, 20, tol, &err);
  return {w * v, std::abs(w) * err};
}

Result integrate_sqrt_singular(const std::function<double(double)>& f, double a, double b,
                               double tol) {
  if (!(a >= 0.0) || !(b > a)) throw std::invalid_argument("integrate_sqrt_singular: need 0 <= a < b");
  auto g = [&f](double u) {
    if (u == 0.0) return 0.0;
    const double t = u * u;
    if (!std::isfinite(t)) return 0.0;
    return 2.0 * u * f(t);
  };
  return integrate(g, std::sqrt(a), std::isinf(b) ? b : std::sqrt(b), tol);
}

TabulatedCdf::TabulatedCdf(std::function<double(double)> density, std::size_t nodes, double tail)
    : density_(std::move(density)) {
  if (nodes < 16) throw std::invalid_argument("TabulatedCdf: too few nodes");
  auto slope = [this](double u) {
    if (u <= 0.0) {
      // limit of 2u f(u²) as u -> 0, estimated from a tiny positive u
      const double e = 1e-12;
      return 2.0 * e * density_(e * e);
    }
    return 2.0 * u * density_(u * u);
  };

  double u_max = 1.0;
  const double inf = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    const double rest = integrate(slope, u_max, inf, 1e-12).value;
    if (rest < tail) break;
    u_max *= 1.25;
  }

  u_.resize(nodes);
  u_[0] = 0.0;
  const double lo = u_max * 1e-8;
  const double ratio = std::pow(u_max / lo, 1.0 / static_cast<double>(nodes - 2));
  for (std::size_t i = 1; i < nodes; ++i) u_[i] = lo * std::pow(ratio, static_cast<double>(i - 1));
  u_.back() = u_max;

  cum_.assign(nodes, 0.0);
  slope_.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) slope_[i] = slope(u_[i]);
  for (std::size_t i = 1; i < nodes; ++i)
    cum_[i] = cum_[i - 1] + integrate(slope, u_[i - 1], u_[i], 1e-12).value;
}

double TabulatedCdf::cdf_u(double u, std::size_t i) const {
  // Hermite cubic on [u_{i-1}, u_i]
  const double u0 = u_[i - 1], u1 = u_[i];
  const double h = u1 - u0;
  const double s = (u - u0) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double v = (2 * s3 - 3 * s2 + 1) * cum_[i - 1] + (s3 - 2 * s2 + s) * h * slope_[i - 1] +
                   (-2 * s3 + 3 * s2) * cum_[i] + (s3 - s2) * h * slope_[i];
  return std::clamp(v, cum_[i - 1], cum_[i]);
}

double TabulatedCdf::cdf(double t) const {
  if (!(t > 0.0)) return 0.0;
  const double u = std::sqrt(t);
  if (u >= u_.back()) return cum_.back();
  const auto it = std::upper_bound(u_.begin(), u_.end(), u);
  return cdf_u(u, static_cast<std::size_t>(it - u_.begin()));
}

double TabulatedCdf::quantile(double p) const {
  if (!(p > 0.0)) return 0.0;
  if (p >= cum_.back()) return t_max();
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), p);
  const std::size_t i = std::max<std::size_t>(1, static_cast<std::size_t>(it - cum_.begin()));
  double lo = u_[i - 1], hi = u_[i];
  double u = lo + (hi - lo) * (p - cum_[i - 1]) / std::max(cum_[i] - cum_[i - 1], 1e-300);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = cdf_u(u, i) - p;
    if (std::abs(f) < 1e-14) break;
    if (f > 0) hi = u; else lo = u;
    if (hi - lo <= 1e-15 * hi) break;
    const double d = 2.0 * u * density_(u * u);
    double next = (d > 0.0) ? u - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  return u * u;
}

}  // namespace lipmin::quad
