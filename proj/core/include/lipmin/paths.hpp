#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "lipmin/rng.hpp"

namespace lipmin {

/// Path sampled on a uniform grid t0 + k*dt, k = 0..n-1.
///
/// Grid paths are treated as continuous: X_t and X_{t-} coincide at grid points.
class GridPath {
 public:
  GridPath(double t0, double dt, std::vector<double> values);

  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return values_.size(); }
  double tmin() const noexcept { return t0_; }
  double tmax() const noexcept { return time(values_.size() - 1); }
  double time(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Index of the grid point closest to t (ties go to the lower index).
  std::size_t nearest_index(double t) const;
  bool contains(double t) const noexcept;

 private:
  double t0_;
  double dt_;
  std::vector<double> values_;
};

/// Breakpoint of a piecewise-affine path with jumps: `right - left` is the jump at `t`.
struct Breakpoint {
  double t;
  double left;
  double right;
};

/// Exact path of a drift-plus-jumps process. Between breakpoints the path is
/// affine with slope `slope`; the first and last breakpoints delimit the window.
class EventPath {
 public:
  EventPath(std::vector<Breakpoint> segments, double slope);

  std::span<const Breakpoint> segments() const noexcept { return segments_; }
  double slope() const noexcept { return slope_; }
  std::size_t size() const noexcept { return segments_.size(); }
  double tmin() const noexcept { return segments_.front().t; }
  double tmax() const noexcept { return segments_.back().t; }
  bool contains(double t) const noexcept { return t >= tmin() && t <= tmax(); }

  /// Right-continuous value X_t.
  double value(double t) const;
  /// Left limit X_{t-}.
  double left_limit(double t) const;
  /// Number of breakpoints carrying a nonzero jump.
  std::size_t jump_count() const noexcept;

 private:
  std::vector<Breakpoint> segments_;
  double slope_;
};

using Path = std::variant<GridPath, EventPath>;

struct BrownianWithDrift {
  double beta = 0.0;
  double sigma = 1.0;
};

/// Named jump distributions for compound Poisson processes.
struct JumpLaw {
  enum class Kind { Constant, Normal, Exponential, Uniform, Cauchy, Pareto };
  Kind kind = Kind::Constant;
  /// Constant: value. Normal: mean. Exponential: rate. Uniform: lower.
  /// Cauchy: location. Pareto: scale x_m.
  double a = 0.0;
  /// Normal: sd. Uniform: upper. Cauchy: scale. Pareto: shape.
  double b = 0.0;

  /// Mean jump size, or nullopt when the law has no finite mean.
  std::optional<double> mean() const;
  double sample(RngStream& rng) const;
};

struct CompoundPoissonDrift {
  double d = 0.0;
  double rate = 1.0;
  JumpLaw jumps;
};

using ProcessSpec = std::variant<BrownianWithDrift, CompoundPoissonDrift>;

struct Window {
  double tmin;
  double tmax;
};

/// Two-sided Brownian motion with drift on `window` (snapped outward to the
/// grid through 0). The forward half draws from `rng`, the backward half from
/// rng.split(1); X_0 = 0 exactly.
GridPath simulate_brownian_two_sided(const BrownianWithDrift& spec, Window window, double dt,
                                     RngStream& rng);

/// Exact compound Poisson path with drift. Window endpoints and 0 are always
/// breakpoints (with zero jump); X_0 = 0.
EventPath simulate_compound_poisson(const CompoundPoissonDrift& spec, Window window,
                                    RngStream& rng);

/// X_t ∧ X_{t-}.
double path_value_min_left(const GridPath& path, double t);
double path_value_min_left(const EventPath& path, double t);
double path_value_min_left(const Path& path, double t);

}  // namespace lipmin
