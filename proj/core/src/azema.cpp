#include "lipmin/azema.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lipmin/errors.hpp"
#include "lipmin/minorant.hpp"

namespace lipmin {

double bridge_minimum(double a, double b, double h, double u) noexcept {
  return 0.5 * (a + b - std::sqrt((b - a) * (b - a) - 2.0 * h * std::log(u)));
}

AzemaPathResult compute_Z_D(const GridPath& path, double alpha, double S,
                            std::span<const double> step_min) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  const std::size_t n = path.size();
  if (!step_min.empty() && step_min.size() != n - 1)
    throw std::invalid_argument("step_min must have one entry per step");
  if (!path.contains(S)) throw WindowError("S outside the path window");
  const std::size_t s = path.nearest_index(S);
  if (s == 0 || s + 1 >= n) throw WindowError("S at the window edge");

  AzemaPathResult out;
  out.S = path.time(s);
  out.S_index = s;
  out.times.resize(n);
  out.Z.assign(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) out.times[k] = path.time(k);

  double inf = path[s] + alpha * path.time(s);
  for (std::size_t k = s + 1; k < n; ++k) {
    const double y = path[k] + alpha * path.time(k);
    inf = std::min(inf, step_min.empty() ? y : step_min[k - 1]);
    out.Z[k] = std::exp(-2.0 * alpha * (y - std::min(inf, y)));
  }
  return out;
}

double ito_identity_residual(const GridPath& b, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  double inf = b[0];
  double stoch = 0.0;  // Σ H_{j} ΔB_j
  double h_prev = std::exp(-2.0 * alpha * (b[0] - inf));
  double worst = std::abs(h_prev - (1.0 + 2.0 * alpha * inf));
  for (std::size_t k = 1; k < b.size(); ++k) {
    const double t = b.time(k) - b.t0();
    const double y = b[k] + alpha * t;
    inf = std::min(inf, y);
    stoch += h_prev * (b[k] - b[k - 1]);
    const double h = std::exp(-2.0 * alpha * (y - inf));
    worst = std::max(worst, std::abs(h - (1.0 - 2.0 * alpha * stoch + 2.0 * alpha * inf)));
    h_prev = h;
  }
  return worst;
}

double simulate_ito_residual(double alpha, double horizon, double dt, RngStream& rng) {
  const GridPath b = simulate_brownian_two_sided({0.0, 1.0}, {0.0, horizon}, dt, rng);
  return ito_identity_residual(b, alpha);
}

RefinedRecipe simulate_refined_recipe(double alpha, Window window, double dt, double left_margin,
                                      RngStream& rng) {
  GridPath path = simulate_brownian_two_sided({0.0, 1.0}, window, dt, rng);
  RngStream mins = rng.split(2);
  const std::size_t n = path.size();
  const std::size_t k0 = path.nearest_index(0.0);
  if (k0 == 0 || k0 + 2 >= n) throw WindowError("window must extend on both sides of 0");

  auto down = [&](std::size_t k) { return path[k] - alpha * path.time(k); };
  auto up = [&](std::size_t k) { return path[k] + alpha * path.time(k); };

  double left_inf = std::numeric_limits<double>::infinity();
  std::size_t left_step = 0;
  for (std::size_t k = 0; k < k0; ++k) {
    const double m = bridge_minimum(down(k), down(k + 1), dt, mins.uniform());
    if (m < left_inf) {
      left_inf = m;
      left_step = k;
    }
  }
  if (path.time(left_step) < path.tmin() + left_margin)
    throw TruncationError("left infimum too close to the window edge");

  std::size_t s = 0;
  for (std::size_t k = k0; k + 1 < n; ++k) {
    if (bridge_minimum(down(k), down(k + 1), dt, mins.uniform()) <= left_inf) {
      s = k + 1;
      break;
    }
  }
  if (s == 0 || s + 1 >= n) throw TruncationError("S not reached inside the window");

  std::vector<double> step_min(n - 1, std::numeric_limits<double>::quiet_NaN());
  std::size_t d_step = s;
  for (std::size_t j = s; j + 1 < n; ++j) {
    step_min[j] = bridge_minimum(up(j), up(j + 1), dt, mins.uniform());
    if (step_min[j] < step_min[d_step]) d_step = j;
  }
  if (d_step + 2 == n) throw TruncationError("right minimum in the last step");
  return {std::move(path), s, d_step, std::move(step_min)};
}

SurvivalCurve survival_curve(const LawParams& p, std::span<const double> times, std::size_t n,
                             RngStream& rng, const SurvivalOptions& opt) {
  p.validate();
  if (p.beta != 0.0) throw UnsupportedError("Azema supermartingale is only implemented for beta = 0");
  if (n < 1000) throw std::invalid_argument("survival_curve needs n >= 1000");
  for (double t : times)
    if (t < 0.0 || t >= opt.window.tmax) throw WindowError("survival time outside [0, tmax)");
  const double margin = opt.left_margin.value_or(recipe_left_margin(p.alpha, 0.0));

  const std::size_t m = times.size();
  std::vector<double> sum_d(m, 0.0), sum_z(m, 0.0), sum_z2(m, 0.0), sum_diff2(m, 0.0);
  SurvivalCurve out;
  out.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    RngStream stream = rng.split(i);
    std::optional<RefinedRecipe> r;
    for (std::uint64_t attempt = 1; !r; ++attempt) {
      try {
        r = simulate_refined_recipe(p.alpha, opt.window, opt.dt, margin, stream);
      } catch (const TruncationError&) {
        if (attempt >= 20) throw;
        ++out.truncated;
        stream = rng.split(i).split(attempt);
      }
    }
    const auto z = compute_Z_D(r->path, p.alpha, r->path.time(r->S_index), r->step_min);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t k = r->path.nearest_index(times[j]);
      const double alive = (k <= r->S_index || r->D_step >= k) ? 1.0 : 0.0;
      const double zk = z.Z[k];
      sum_d[j] += alive;
      sum_z[j] += zk;
      sum_z2[j] += zk * zk;
      sum_diff2[j] += (alive - zk) * (alive - zk);
    }
  }
  const double nn = static_cast<double>(n);
  for (std::size_t j = 0; j < m; ++j) {
    SurvivalPoint pt{};
    pt.t = times[j];
    pt.survival = sum_d[j] / nn;
    pt.survival_se = std::sqrt(pt.survival * (1.0 - pt.survival) / nn);
    pt.mean_Z = sum_z[j] / nn;
    pt.mean_Z_se = std::sqrt(std::max(0.0, sum_z2[j] / nn - pt.mean_Z * pt.mean_Z) / (nn - 1.0));
    const double mean_diff = pt.survival - pt.mean_Z;
    pt.diff_se = std::sqrt(std::max(0.0, sum_diff2[j] / nn - mean_diff * mean_diff) / (nn - 1.0));
    out.points.push_back(pt);
  }
  return out;
}

}  // namespace lipmin
