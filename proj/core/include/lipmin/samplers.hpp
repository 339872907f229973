#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "lipmin/excursions.hpp"
#include "lipmin/laws.hpp"
#include "lipmin/paths.hpp"
#include "lipmin/rng.hpp"

namespace lipmin {

struct TauGammaSample {
  double tau;
  double gamma_hat;  ///< in [0, 2α·tau]
};

enum class Provenance { Pathwise, Direct };

/// Generic excursion drawn from the (τ, γ̂) decomposition.
struct SampledExcursion {
  Excursion path;  ///< 𝔈_t - αt on [0, ζ]; empty in features-only mode
  ExcursionFeatures features;
  Provenance provenance = Provenance::Direct;
  double tau = 0.0;
  double gamma_hat = 0.0;
  double hit_time = 0.0;  ///< T̃_γ̂, so ζ = tau + hit_time
};

/// τ by inverse CDF on the cached 𝔗 table, then γ̂ | τ from the truncated
/// exponential by its exact inverse CDF.
TauGammaSample sample_tau_gamma(const LawParams& p, RngStream& rng);

/// Exact first-passage time of drift-μ Brownian motion to level y (inverse
/// Gaussian with mean y/μ and shape y²). Returns 0 for y == 0.
double sample_inverse_gaussian_hitting(double mu, double y, RngStream& rng);

/// Norm of a 3-d Brownian bridge from (x0, 0, 0) at times.front() to the
/// origin at times.back(), evaluated at `times` (sorted, at least two).
/// With x0 = 0 and times spanning [0, 1] this is a standard Brownian excursion;
/// with x0 > 0 it is a 3-d Bessel bridge from x0 to 0.
std::vector<double> sample_bessel3_bridge(std::span<const double> times, double x0, RngStream& rng);

/// Standard Brownian excursion on the grid k/n_steps, k = 0..n_steps.
std::vector<double> sample_brownian_excursion(std::size_t n_steps, RngStream& rng);

/// ζ = τ + T, L = τ - γ̂/(2α), ζ - L = T + γ̂/(2α), W_ζ = α(τ - T - γ̂/α) and
/// H = √(L(τ-L)/τ)·chi3.
ExcursionFeatures features_from_decomposition(const LawParams& p, double tau, double gamma_hat,
                                              double hit_time, double chi3);

/// Features only, no path.
SampledExcursion sample_features_direct_full(const LawParams& p, RngStream& rng);
ExcursionFeatures sample_features_direct(const LawParams& p, RngStream& rng);

/// Features plus a path with steps of at most dt. The first segment is
/// √τ e(t/τ) + 2αt; the hitting segment is 2ατ - γ̂ plus a 3-d Bessel bridge
/// from γ̂ to 0 over the analytically sampled hitting time, so the path ends
/// exactly where the feature algebra says. H is read off the path at L.
/// Throws Error if the hitting segment needs more than 1e9 steps three times in a row.
SampledExcursion sample_generic_excursion(const LawParams& p, double dt, RngStream& rng);

/// R_t = |W_t + μt e₁| for a 3-d Brownian motion W, on the grid k·dt in [0, horizon].
GridPath sample_bes3_drift(double mu, double horizon, double dt, RngStream& rng);

struct WilliamsPath {
  GridPath path;
  double gamma;        ///< depth of the global minimum
  double switch_time;  ///< time the minimum is attained
};

/// Drift-μ Brownian motion on [0, horizon] built as BM(-μ) down to -γ,
/// γ ~ Exp(2μ), followed by -γ + BES(3, μ). Exact at grid points.
WilliamsPath sample_williams_path(double mu, double horizon, double dt, RngStream& rng);

struct BesselFromMin {
  GridPath path;
  double g;        ///< overall minimum level
  double t_min;    ///< time the minimum is attained
};

/// BES(3, μ) started at b > 0: BM(-μ) from b down to g (density ∝ e^{2μx}
/// on [0, b]), then g + BES(3, μ). Exact at grid points.
BesselFromMin sample_bessel_from_min(double b, double mu, double horizon, double dt,
                                     RngStream& rng);

/// R^{(α+β)}_t - αt on the grid k·dt in [0, horizon].
GridPath sample_post_D(const LawParams& p, double horizon, double dt, RngStream& rng);

/// 𝔗 = inf{t > 0 : R^{(α+β)}_t = 2αt} from a simulated BES(3, α+β). Steps are
/// min(dt, 0.01·t, 0.01·R²): the t-relative cap resolves the t^{-1/2} mass near
/// zero and the R²-relative cap keeps the radial motion locally one-dimensional,
/// so the Brownian-bridge test on R - 2αt catches crossings inside a step.
double sample_frak_T_pathwise(const LawParams& p, double dt, RngStream& rng);

enum class ArgminMethod {
  Grid,   ///< grid walk, stops once the running minimum is stale for 10/(α+β)²
  Exact,  ///< Williams: argmin of BM(μ) is the hitting time of -Exp(2μ) by BM(-μ)
};

struct DDecomposition {
  double D;
  double gamma;        ///< Γ = -E
  double t_prime;      ///< T'_Γ
  double t_second;     ///< T̃''
};

/// D = T'_Γ + T̃'' for X = B + βt. Throws Error if the grid walk exceeds 1e9 steps.
DDecomposition sample_D_decomposition(const LawParams& p, double dt, RngStream& rng,
                                      ArgminMethod method = ArgminMethod::Grid);

struct StraddleSample {
  double lifetime;  ///< D - G
  double U;         ///< -G / (D - G)
  double G;
  double D;
  ExcursionFeatures features;
};

/// Size-biased draws from a fixed pool of direct generic excursions.
class StraddleSampler {
 public:
  /// Throws std::invalid_argument when pool_size < 1000.
  StraddleSampler(const LawParams& p, std::size_t pool_size, RngStream& rng);

  StraddleSample draw(RngStream& rng) const;
  std::span<const ExcursionFeatures> pool() const noexcept { return pool_; }

 private:
  std::vector<ExcursionFeatures> pool_;
  std::vector<double> cum_;  // running sum of ζ
};

/// One straddling draw with a fresh pool of `pool_size` direct samples.
StraddleSample sample_straddling_features(const LawParams& p, RngStream& rng,
                                          std::size_t pool_size = 10000);

}  // namespace lipmin
