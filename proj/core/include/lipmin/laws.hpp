#pragma once

#include <memory>
#include <string_view>

#include "lipmin/quadrature.hpp"

namespace lipmin {

/// Slope bound and drift of X = B + βt; every closed form below needs |β| < α.
struct LawParams {
  double alpha = 1.0;
  double beta = 0.0;

  /// Throws DomainError unless alpha > 0 and |beta| < alpha.
  void validate() const;
};

enum class FeatureKind { Zeta, LPeak, ZetaMinusL, WZeta };

std::string_view to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(std::string_view name);

/// Standard normal tail Φ̄(x) = P(N > x).
double normal_tail(double x);
/// e^{x²/2} Φ̄(x), finite for large x where the two factors over/underflow.
double scaled_normal_tail(double x);

/// E exp(-(ρ1 ζ + ρ2 L + ρ3 (ζ-L) + ρ4 W_ζ)) for a generic excursion.
/// Throws DomainError when either radicand is negative.
double psi_joint_laplace(const LawParams& p, double rho1, double rho2, double rho3, double rho4);

/// Single-feature Laplace transforms. The arithmetic mirrors psi_joint_laplace
/// with one nonzero argument, so the two agree bit for bit.
double feature_laplace(FeatureKind kind, const LawParams& p, double lambda);

/// Densities of ζ (β = 0 only), L and ζ - L at l > 0.
double feature_density(FeatureKind kind, const LawParams& p, double l);

struct FeatureMeans {
  double zeta;
  double L;
  double zeta_minus_L;
  double w_zeta;
};

/// Eζ = 1/(2(α²-β²)), EL = 1/(4α(α-β)), E(ζ-L) = 1/(4α(α+β)), EW_ζ = βEζ.
/// zeta is formed as L + zeta_minus_L.
FeatureMeans mean_features(const LawParams& p);

/// Joint density of the split time τ and drop γ̂ of the generic excursion.
double joint_density_tau_gamma(const LawParams& p, double t, double x);
/// Marginal density of τ (equivalently of 𝔗 = inf{t : R_t = 2αt}).
double density_frak_T(const LawParams& p, double t);
/// Density of γ̂ given τ = t: exponential with rate 2(α+β) truncated to [0, 2αt].
double conditional_density_gamma(const LawParams& p, double x, double t);
/// E exp(-λ / 𝔗): Laplace transform of the last-exit time 1/𝔗.
double last_exit_laplace(const LawParams& p, double lambda);

/// First passage of a drift-μ Brownian motion to level y > 0.
struct HittingTimeLaw {
  double mu;
  double y;

  double density(double t) const;
  double laplace(double lambda) const;
  double cdf(double t) const;
  double mean() const { return y / mu; }
};

/// Throws std::invalid_argument unless mu > 0 and y > 0.
HittingTimeLaw hitting_time_law(double mu, double y);

/// Normalized Lévy measure density of the contact-set subordinator (β = 0).
double levy_measure_density(double alpha, double x);

/// |∫_0^∞ (e^{-at} - e^{-bt}) / √(2πt³) dt - (√(2b) - √(2a))| by quadrature.
double check_integral_identity(double a, double b);

/// Shared, immutable CDF table of 𝔗 for these parameters (built on first use).
std::shared_ptr<const quad::TabulatedCdf> frak_T_table(const LawParams& p);

/// CDF table of a feature density (ζ requires β = 0; W_ζ unsupported).
quad::TabulatedCdf feature_cdf_table(FeatureKind kind, const LawParams& p);

}  // namespace lipmin
