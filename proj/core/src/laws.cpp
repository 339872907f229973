#include "lipmin/laws.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "lipmin/errors.hpp"

namespace lipmin {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;  // 1/√(2π)

double sq(double x) { return x * x; }

// 4α e^{-a² l/2} (1/√(2πl) - c e^{c² l/2} Φ̄(c√l)), the inverse Laplace
// transform of 4α / (c + √(2λ + a²)).
double peak_type_density(double alpha, double a, double c, double l) {
  return 4.0 * alpha * std::exp(-0.5 * a * a * l) *
         (kInvSqrt2Pi / std::sqrt(l) - c * scaled_normal_tail(c * std::sqrt(l)));
}

}  // namespace

void LawParams::validate() const {
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  if (!(std::abs(beta) < alpha)) throw DomainError("need |beta| < alpha");
}

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Zeta: return "zeta";
    case FeatureKind::LPeak: return "L";
    case FeatureKind::ZetaMinusL: return "zeta-minus-L";
    case FeatureKind::WZeta: return "w-zeta";
  }
  return "?";
}

FeatureKind feature_kind_from_string(std::string_view name) {
  if (name == "zeta") return FeatureKind::Zeta;
  if (name == "L") return FeatureKind::LPeak;
  if (name == "zeta-minus-L") return FeatureKind::ZetaMinusL;
  if (name == "w-zeta") return FeatureKind::WZeta;
  throw std::invalid_argument("unknown feature: " + std::string(name));
}

double normal_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double scaled_normal_tail(double x) {
  const double z = x / std::numbers::sqrt2;
  if (z < 25.0) return 0.5 * std::exp(z * z) * std::erfc(z);
  // asymptotic expansion of erfcx(z)
  const double r = 1.0 / (2.0 * z * z);
  const double series = 1.0 - r * (1.0 - 3.0 * r * (1.0 - 5.0 * r * (1.0 - 7.0 * r)));
  return 0.5 * series / (z * std::sqrt(std::numbers::pi));
}

double psi_joint_laplace(const LawParams& p, double rho1, double rho2, double rho3, double rho4) {
  p.validate();
  const double a = p.alpha, b = p.beta;
  const double r_up = 2.0 * (rho1 + rho3 - a * rho4) + (a + b) * (a + b);
  const double r_down = 2.0 * (rho1 + rho2 + a * rho4) + (a - b) * (a - b);
  if (r_up < 0.0 || r_down < 0.0) throw DomainError("psi: negative radicand");
  return 4.0 * a / (2.0 * a + std::sqrt(r_up) + std::sqrt(r_down));
}

double feature_laplace(FeatureKind kind, const LawParams& p, double lambda) {
  p.validate();
  const double a = p.alpha, b = p.beta;
  switch (kind) {
    case FeatureKind::Zeta:
      if (lambda < 0.0) throw DomainError("lambda must be >= 0");
      return 4.0 * a /
             (2.0 * a + std::sqrt(2.0 * lambda + (a + b) * (a + b)) +
              std::sqrt(2.0 * lambda + (a - b) * (a - b)));
    case FeatureKind::LPeak:
      if (lambda < 0.0) throw DomainError("lambda must be >= 0");
      return 4.0 * a / (2.0 * a + std::sqrt((a + b) * (a + b)) +
                        std::sqrt(2.0 * lambda + (a - b) * (a - b)));
    case FeatureKind::ZetaMinusL:
      if (lambda < 0.0) throw DomainError("lambda must be >= 0");
      return 4.0 * a / (2.0 * a + std::sqrt(2.0 * lambda + (a + b) * (a + b)) +
                        std::sqrt((a - b) * (a - b)));
    case FeatureKind::WZeta: {
      const double up = (a + b) * (a + b) - 2.0 * (a * lambda);
      const double down = 2.0 * (a * lambda) + (a - b) * (a - b);
      if (up < 0.0 || down < 0.0) throw DomainError("W_zeta Laplace transform: lambda outside domain");
      return 4.0 * a / (2.0 * a + std::sqrt(up) + std::sqrt(down));
    }
  }
  throw std::invalid_argument("unknown feature kind");
}

double feature_density(FeatureKind kind, const LawParams& p, double l) {
  p.validate();
  if (!(l > 0.0)) throw DomainError("density argument must be > 0");
  const double a = p.alpha, b = p.beta;
  switch (kind) {
    case FeatureKind::Zeta:
      if (b != 0.0)
        throw UnsupportedError("zeta density only has a closed form for beta = 0 (invert the Laplace transform)");
      return 0.5 * peak_type_density(a, a, a, l);
    case FeatureKind::LPeak: return peak_type_density(a, a - b, 3.0 * a + b, l);
    case FeatureKind::ZetaMinusL: return peak_type_density(a, a + b, 3.0 * a - b, l);
    case FeatureKind::WZeta: throw UnsupportedError("no closed-form density for W_zeta");
  }
  throw std::invalid_argument("unknown feature kind");
}

FeatureMeans mean_features(const LawParams& p) {
  p.validate();
  const double a = p.alpha, b = p.beta;
  FeatureMeans m{};
  m.L = 1.0 / (4.0 * a * (a - b));
  m.zeta_minus_L = 1.0 / (4.0 * a * (a + b));
  m.zeta = m.L + m.zeta_minus_L;
  m.w_zeta = b / (2.0 * (a * a - b * b));
  return m;
}

double joint_density_tau_gamma(const LawParams& p, double t, double x) {
  p.validate();
  if (!(t > 0.0)) throw DomainError("t must be > 0");
  if (x < 0.0 || x > 2.0 * p.alpha * t) return 0.0;
  const double a = p.alpha, b = p.beta;
  return std::exp(-0.5 * sq(a - b) * t - 2.0 * (a + b) * x) * kInvSqrt2Pi / (t * std::sqrt(t));
}

double density_frak_T(const LawParams& p, double t) {
  p.validate();
  if (!(t > 0.0)) throw DomainError("t must be > 0");
  const double a = p.alpha, b = p.beta;
  const double lo = 0.5 * sq(a - b);
  const double hi = 0.5 * sq(3.0 * a + b);
  // e^{-lo t} - e^{-hi t} without cancellation near t = 0
  const double diff = -std::exp(-lo * t) * std::expm1(-(hi - lo) * t);
  return diff * kInvSqrt2Pi / (2.0 * (a + b) * t * std::sqrt(t));
}

double conditional_density_gamma(const LawParams& p, double x, double t) {
  p.validate();
  if (!(t > 0.0)) throw DomainError("t must be > 0");
  const double top = 2.0 * p.alpha * t;
  if (x < 0.0 || x > top) return 0.0;
  const double k = 2.0 * (p.alpha + p.beta);
  return k * std::exp(-k * x) / -std::expm1(-k * top);
}

double last_exit_laplace(const LawParams& p, double lambda) {
  p.validate();
  if (lambda < 0.0) throw DomainError("lambda must be >= 0");
  if (lambda == 0.0) return 1.0;
  const double s = std::sqrt(2.0 * lambda);
  const double c = p.alpha + p.beta;
  return std::exp(-2.0 * p.alpha * s) * std::sinh(c * s) / (c * s);
}

double HittingTimeLaw::density(double t) const {
  if (!(t > 0.0)) return 0.0;
  return y * kInvSqrt2Pi / (t * std::sqrt(t)) * std::exp(-sq(y - mu * t) / (2.0 * t));
}

double HittingTimeLaw::laplace(double lambda) const {
  if (lambda < 0.0) throw DomainError("lambda must be >= 0");
  return std::exp(-y * (std::sqrt(2.0 * lambda + mu * mu) - mu));
}

double HittingTimeLaw::cdf(double t) const {
  if (!(t > 0.0)) return 0.0;
  const double st = std::sqrt(t);
  const double z = (mu * t + y) / st;
  // e^{2μy} Φ̄(z) = e^{-(μt - y)²/(2t)} · e^{z²/2} Φ̄(z)
  return normal_tail((y - mu * t) / st) + std::exp(-sq(mu * t - y) / (2.0 * t)) * scaled_normal_tail(z);
}

HittingTimeLaw hitting_time_law(double mu, double y) {
  if (!(mu > 0.0)) throw std::invalid_argument("hitting time law needs mu > 0");
  if (!(y > 0.0)) throw std::invalid_argument("hitting time law needs y > 0");
  return {mu, y};
}

double levy_measure_density(double alpha, double x) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  if (!(x > 0.0)) throw DomainError("x must be > 0");
  return 2.0 * alpha * std::exp(-0.5 * alpha * alpha * x) * kInvSqrt2Pi / std::sqrt(x) -
         2.0 * alpha * alpha * normal_tail(alpha * std::sqrt(x));
}

double check_integral_identity(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("integral identity needs a, b > 0");
  if (a == b) return 0.0;
  const double lo = std::min(a, b);
  const double gap = std::abs(b - a);
  const double sign = (a < b) ? 1.0 : -1.0;
  // e^{-lo t}(1 - e^{-gap t}) / √(2πt³); the u = √t substitution removes the singularity
  auto f = [lo, gap](double t) {
    return -std::exp(-lo * t) * std::expm1(-gap * t) * kInvSqrt2Pi / (t * std::sqrt(t));
  };
  const double value = sign * quad::integrate_sqrt_singular(f, 0.0, std::numeric_limits<double>::infinity(), 1e-12).value;
  return std::abs(value - (std::sqrt(2.0 * b) - std::sqrt(2.0 * a)));
}

std::shared_ptr<const quad::TabulatedCdf> frak_T_table(const LawParams& p) {
  p.validate();
  static std::mutex mu;
  static std::map<std::pair<double, double>, std::shared_ptr<const quad::TabulatedCdf>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p.alpha, p.beta}];
  if (!slot) {
    const LawParams copy = p;
    slot = std::make_shared<const quad::TabulatedCdf>([copy](double t) { return density_frak_T(copy, t); });
  }
  return slot;
}

quad::TabulatedCdf feature_cdf_table(FeatureKind kind, const LawParams& p) {
  p.validate();
  feature_density(kind, p, 1.0);  // surfaces unsupported combinations early
  return quad::TabulatedCdf([kind, p](double l) { return feature_density(kind, p, l); });
}

}  // namespace lipmin
