#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace lipmin::quad {

inline constexpr double kDefaultTol = 1e-9;

struct Result {
  double value;
  double error;
};

/// Adaptive Gauss–Kronrod (15 points) on [a, b]; b may be +infinity.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = kDefaultTol);

/// ∫_a^b f(t) dt for 0 <= a < b <= ∞ where f may blow up like t^{-1/2} at 0:
/// integrates 2u f(u²) over [√a, √b].
Result integrate_sqrt_singular(const std::function<double(double)>& f, double a = 0.0,
                               double b = std::numeric_limits<double>::infinity(),
                               double tol = kDefaultTol);

/// CDF of a density on (0, ∞), tabulated in u = √t so the t^{-1/2}
/// singularity at 0 becomes a finite slope. Cubic Hermite interpolation uses
/// the density itself for the node derivatives; values are clamped monotone.
class TabulatedCdf {
 public:
  /// `tail` is the mass allowed beyond the last node.
  explicit TabulatedCdf(std::function<double(double)> density, std::size_t nodes = 4096,
                        double tail = 1e-9);

  double cdf(double t) const;
  /// Inverse CDF by bracketing on the table and Newton/bisection inside the
  /// bracket (|F(t) - p| below 1e-12 or bracket width below 1e-14 relative).
  double quantile(double p) const;
  /// Total mass captured by the table (≈ 1 for a normalized density).
  double mass() const noexcept { return cum_.back(); }
  double t_max() const noexcept { return u_.back() * u_.back(); }

 private:
  double cdf_u(double u, std::size_t i) const;

  std::function<double(double)> density_;
  std::vector<double> u_;
  std::vector<double> cum_;
  std::vector<double> slope_;  // dF/du = 2u f(u²)
};

}  // namespace lipmin::quad
