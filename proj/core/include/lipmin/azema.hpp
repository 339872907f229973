#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lipmin/laws.hpp"
#include "lipmin/paths.hpp"
#include "lipmin/rng.hpp"

namespace lipmin {

struct AzemaPathResult {
  std::vector<double> times;
  std::vector<double> Z;  ///< 1 up to S, then exp(-2α(Y - inf Y)) with Y = X̌ + α·
  double S = 0.0;
  std::size_t S_index = 0;
};

/// Evaluates Z^D along a grid path for the stopping time S (a grid time).
/// `step_min`, when given, holds for each step k the minimum of X_s + αs over
/// [t_k, t_{k+1}] (size n - 1); the running infimum then uses those instead of
/// the grid values. Throws WindowError when S is not strictly inside the window.
AzemaPathResult compute_Z_D(const GridPath& path, double alpha, double S,
                            std::span<const double> step_min = {});

/// Minimum of a Brownian bridge from a to b over a step of length h, given a
/// uniform u in (0, 1).
double bridge_minimum(double a, double b, double h, double u) noexcept;

/// `b` is a grid path of B on [0, T] with B_0 = 0; the drift αt is added here.
/// Returns max_k |H_k - (1 - 2α Σ_{j<k} H_j ΔB_j + 2α I_k)| with
/// H = exp(-2α[(B + αt) - I]) and I the running minimum of B + αt.
double ito_identity_residual(const GridPath& b, double alpha);

/// One path of standard Brownian motion on [0, T] followed by the residual above.
double simulate_ito_residual(double alpha, double horizon, double dt, RngStream& rng);

/// S and D for one two-sided path, refined by exact bridge minima per step.
/// S is the right end of the first step whose bridge minimum of X - αt drops
/// to the left infimum; D lies in step [t_j, t_{j+1}] where j is the step
/// with the lowest bridge minimum of X + αt after S.
struct RefinedRecipe {
  GridPath path;
  std::size_t S_index;
  std::size_t D_step;            ///< D ∈ [t_{D_step}, t_{D_step + 1}]
  std::vector<double> step_min;  ///< bridge minima of X + αt, filled from S_index on
};

/// Throws TruncationError when the left infimum sits within `left_margin` of
/// the left edge or the right minimum is in the last step.
RefinedRecipe simulate_refined_recipe(double alpha, Window window, double dt, double left_margin,
                                      RngStream& rng);

struct SurvivalPoint {
  double t;
  double survival;     ///< empirical P(D > t)
  double survival_se;
  double mean_Z;
  double mean_Z_se;
  double diff_se;      ///< SE of the paired mean of 1{D > t} - Z_t
};

struct SurvivalCurve {
  std::vector<SurvivalPoint> points;
  std::size_t n = 0;
  std::size_t truncated = 0;  ///< paths redrawn after a TruncationError
};

struct SurvivalOptions {
  double dt = 1e-3;
  Window window{-20.0, 15.0};
  std::optional<double> left_margin;  ///< default 10/(2α²)
};

/// Monte Carlo P(D > t) and mean Z_t over n paths (path i uses rng.split(i)).
/// Only β = 0 is supported; other drifts raise UnsupportedError.
SurvivalCurve survival_curve(const LawParams& p, std::span<const double> times, std::size_t n,
                             RngStream& rng, const SurvivalOptions& opt = {});

}  // namespace lipmin
