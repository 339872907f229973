#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lipmin/paths.hpp"

namespace lipmin {

/// α-Lipschitz minorant evaluated on the sample points of a path (grid points
/// or breakpoints), together with the indices where it touches X ∧ X_-.
struct MinorantResult {
  double alpha = 0.0;
  std::vector<double> minorant;
  std::vector<std::size_t> contacts;
};

/// Contact structure of a path relative to time 0.
struct ContactTimes {
  std::optional<double> G;  ///< last contact <= 0
  std::optional<double> D;  ///< first contact > 0, only if at least `buffer` inside the window
  std::optional<double> S;  ///< recipe time, when computed
  std::vector<std::size_t> indices;
  std::vector<double> times;
};

/// True iff the minorant exists almost surely: |E X_1| < alpha.
/// Throws UnsupportedError when the jump law has no finite mean.
bool check_existence(const ProcessSpec& spec, double alpha);

/// Two-pass sweep: g_k = min(f_k, g_{k-1} + α·Δt), h_k = min(f_k, h_{k+1} + α·Δt),
/// m = min(g, h), with f = X ∧ X_-. On a grid Δt = dt, so α·dt is accumulated
/// once per step; the brute-force oracle follows the same addition order and
/// the two agree bit for bit. `contacts` lists indices with f_k == m_k.
MinorantResult compute_minorant(const GridPath& path, double alpha);
MinorantResult compute_minorant(const EventPath& path, double alpha);
MinorantResult compute_minorant(const Path& path, double alpha);

/// Lists sample points with (X ∧ X_-) - m <= tol and locates G and D.
/// D is dropped when it lies within `buffer` of the right window edge.
/// Throws WindowError when no sample point qualifies.
ContactTimes extract_contact_set(const GridPath& path, const MinorantResult& m, double tol,
                                 double buffer = 0.0);
ContactTimes extract_contact_set(const EventPath& path, const MinorantResult& m, double tol,
                                 double buffer = 0.0);

/// Default contact tolerance for a Brownian grid: c·σ·√dt.
double brownian_contact_tolerance(double sigma, double dt, double c = 0.5);

struct RecipeTimes {
  double S;
  double D;
  std::size_t S_index;
  std::size_t D_index;
  /// Time where inf_{u<=0}(X_u - αu) is attained.
  double left_argmin;
};

/// S = inf{t > 0 : X_t ∧ X_{t-} - αt <= inf_{u<=0}(X_u - αu)} and
/// D = inf{t >= S : X_t ∧ X_{t-} + αt = inf_{u>=S}(X_u + αu)}, both over the window.
/// Throws TruncationError if the left infimum is attained within `left_margin`
/// of the left edge, or if S or the right infimum sits on the right edge.
RecipeTimes recipe_times(const GridPath& path, double alpha, double left_margin = 0.0);
RecipeTimes recipe_times(const EventPath& path, double alpha, double left_margin = 0.0);

/// Margin for recipe_times: ten expected excursion lengths, 10/(2(α²-β²)).
double recipe_left_margin(double alpha, double beta);

/// Piecewise-affine minorant between two consecutive contacts.
struct Sawtooth {
  double t_left;
  double v_left;
  double t_right;
  double v_right;
  double alpha;
  double t_star;
  double peak;

  double operator()(double t) const noexcept {
    return t <= t_star ? v_left + alpha * (t - t_left) : v_right + alpha * (t_right - t);
  }
};

/// t* = (vR - vL + α(tR + tL)) / (2α); throws std::invalid_argument if the two
/// points cannot both be contacts (|vR - vL| > α(tR - tL)).
Sawtooth sawtooth_segment(double t_left, double v_left, double t_right, double v_right,
                          double alpha);

}  // namespace lipmin
