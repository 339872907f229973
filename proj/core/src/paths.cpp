#include "lipmin/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lipmin/errors.hpp"

namespace lipmin {

GridPath::GridPath(double t0, double dt, std::vector<double> values)
    : t0_(t0), dt_(dt), values_(std::move(values)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw std::invalid_argument("GridPath: dt must be > 0");
  if (values_.empty()) throw std::invalid_argument("GridPath: values must be nonempty");
}

bool GridPath::contains(double t) const noexcept {
  const double slack = 1e-9 * dt_;
  return t >= tmin() - slack && t <= tmax() + slack;
}

std::size_t GridPath::nearest_index(double t) const {
  if (!contains(t)) throw WindowError("time outside grid path window");
  const double x = (t - t0_) / dt_;
  auto k = static_cast<long long>(std::floor(x));
  if (x - static_cast<double>(k) > 0.5) ++k;
  k = std::clamp<long long>(k, 0, static_cast<long long>(values_.size()) - 1);
  return static_cast<std::size_t>(k);
}

EventPath::EventPath(std::vector<Breakpoint> segments, double slope)
    : segments_(std::move(segments)), slope_(slope) {
  if (segments_.empty()) throw std::invalid_argument("EventPath: at least one breakpoint required");
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (!(segments_[i].t > segments_[i - 1].t))
      throw std::invalid_argument("EventPath: breakpoint times must be strictly increasing");
  }
}

namespace {

// Index of the last breakpoint with time <= t.
std::size_t locate(std::span<const Breakpoint> seg, double t) {
  auto it = std::upper_bound(seg.begin(), seg.end(), t,
                             [](double v, const Breakpoint& b) { return v < b.t; });
  return static_cast<std::size_t>(it - seg.begin()) - 1;
}

}  // namespace

double EventPath::value(double t) const {
  if (!contains(t)) throw WindowError("time outside event path window");
  const auto& b = segments_[locate(segments_, t)];
  return b.right + slope_ * (t - b.t);
}

double EventPath::left_limit(double t) const {
  if (!contains(t)) throw WindowError("time outside event path window");
  const std::size_t i = locate(segments_, t);
  const auto& b = segments_[i];
  if (b.t == t) return b.left;
  return b.right + slope_ * (t - b.t);
}

std::size_t EventPath::jump_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(segments_.begin(), segments_.end(),
                                                [](const Breakpoint& b) { return b.right != b.left; }));
}

std::optional<double> JumpLaw::mean() const {
  switch (kind) {
    case Kind::Constant: return a;
    case Kind::Normal: return a;
    case Kind::Exponential: return 1.0 / a;
    case Kind::Uniform: return 0.5 * (a + b);
    case Kind::Cauchy: return std::nullopt;
    case Kind::Pareto:
      if (b <= 1.0) return std::nullopt;
      return b * a / (b - 1.0);
  }
  return std::nullopt;
}

double JumpLaw::sample(RngStream& rng) const {
  switch (kind) {
    case Kind::Constant: return a;
    case Kind::Normal: return a + b * rng.normal();
    case Kind::Exponential: return rng.exponential(a);
    case Kind::Uniform: return a + (b - a) * rng.uniform();
    case Kind::Cauchy: return a + b * std::tan(std::numbers::pi * (rng.uniform() - 0.5));
    case Kind::Pareto: return a * std::pow(rng.uniform(), -1.0 / b);
  }
  return 0.0;
}

GridPath simulate_brownian_two_sided(const BrownianWithDrift& spec, Window window, double dt,
                                     RngStream& rng) {
  if (!(window.tmin <= 0.0 && 0.0 <= window.tmax))
    throw WindowError("simulation window must contain 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(spec.sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");

  // Snap outward; the relative slack keeps exact multiples from gaining a point.
  const auto steps = [dt](double len) {
    return static_cast<std::size_t>(std::ceil(len / dt * (1.0 - 1e-12)));
  };
  const std::size_t n_neg = steps(-window.tmin);
  const std::size_t n_pos = steps(window.tmax);

  std::vector<double> x(n_neg + n_pos + 1);
  const double sd = spec.sigma * std::sqrt(dt);
  const double mu = spec.beta * dt;

  x[n_neg] = 0.0;
  for (std::size_t k = 1; k <= n_pos; ++k) x[n_neg + k] = x[n_neg + k - 1] + mu + sd * rng.normal();

  RngStream back = rng.split(1);
  for (std::size_t k = 1; k <= n_neg; ++k) x[n_neg - k] = x[n_neg - k + 1] - mu + sd * back.normal();

  return GridPath(-static_cast<double>(n_neg) * dt, dt, std::move(x));
}

EventPath simulate_compound_poisson(const CompoundPoissonDrift& spec, Window window,
                                    RngStream& rng) {
  if (!(window.tmin <= 0.0 && 0.0 <= window.tmax))
    throw WindowError("simulation window must contain 0");
  if (!(spec.rate > 0.0)) throw std::invalid_argument("jump rate must be > 0");

  std::vector<Breakpoint> fwd;
  {
    double t = 0.0, x = 0.0;
    for (;;) {
      const double next = t + rng.exponential(spec.rate);
      if (next > window.tmax) break;
      const double left = x + spec.d * (next - t);
      const double right = left + spec.jumps.sample(rng);
      fwd.push_back({next, left, right});
      t = next;
      x = right;
    }
    if (window.tmax > 0.0 && (fwd.empty() || fwd.back().t < window.tmax)) {
      const double v = x + spec.d * (window.tmax - t);
      fwd.push_back({window.tmax, v, v});
    }
  }

  std::vector<Breakpoint> bwd;
  {
    RngStream back = rng.split(1);
    double t = 0.0, x = 0.0;  // x holds X_{t-}-side value continuing to the left
    for (;;) {
      const double next = t - back.exponential(spec.rate);
      if (next < window.tmin) break;
      const double right = x - spec.d * (t - next);
      const double left = right - spec.jumps.sample(back);
      bwd.push_back({next, left, right});
      t = next;
      x = left;
    }
    if (window.tmin < 0.0 && (bwd.empty() || bwd.back().t > window.tmin)) {
      const double v = x - spec.d * (t - window.tmin);
      bwd.push_back({window.tmin, v, v});
    }
  }

  std::vector<Breakpoint> all(bwd.rbegin(), bwd.rend());
  all.push_back({0.0, 0.0, 0.0});
  all.insert(all.end(), fwd.begin(), fwd.end());
  return EventPath(std::move(all), spec.d);
}

double path_value_min_left(const GridPath& path, double t) {
  if (!path.contains(t)) throw WindowError("time outside grid path window");
  const double x = std::clamp((t - path.t0()) / path.dt(), 0.0, static_cast<double>(path.size() - 1));
  const auto k = static_cast<std::size_t>(std::floor(x));
  const double frac = x - static_cast<double>(k);
  if (frac == 0.0 || k + 1 >= path.size()) return path[k];
  return path[k] + frac * (path[k + 1] - path[k]);
}

double path_value_min_left(const EventPath& path, double t) {
  return std::min(path.value(t), path.left_limit(t));
}

double path_value_min_left(const Path& path, double t) {
  return std::visit([t](const auto& p) { return path_value_min_left(p, t); }, path);
}

}  // namespace lipmin
