#include "lipmin/samplers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "lipmin/errors.hpp"

namespace lipmin {

namespace {

constexpr double kMaxSteps = 1e9;

std::size_t grid_count(double horizon, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
  return static_cast<std::size_t>(std::floor(horizon / dt * (1.0 + 1e-12))) + 1;
}

// Uniform times on [0, len] with steps <= dt, plus `extra` if it falls strictly inside.
std::vector<double> segment_times(double len, double dt, double extra) {
  const std::size_t n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(len / dt)));
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = len * static_cast<double>(k) / static_cast<double>(n);
  t.back() = len;
  if (extra > 0.0 && extra < len) {
    const auto it = std::lower_bound(t.begin(), t.end(), extra);
    if (*it != extra) t.insert(it, extra);
  }
  return t;
}

// Radial part of a 3-d drift-μ Brownian motion that is at the origin at t_start,
// evaluated at the increasing times `at` (all > t_start).
std::vector<double> bes3_from_origin(double t_start, std::span<const double> at, double mu,
                                     RngStream& rng) {
  std::vector<double> out(at.size());
  std::array<double, 3> w{0.0, 0.0, 0.0};
  double t = t_start;
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double h = at[i] - t;
    const double sh = std::sqrt(h);
    w[0] += mu * h + sh * rng.normal();
    w[1] += sh * rng.normal();
    w[2] += sh * rng.normal();
    out[i] = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
    t = at[i];
  }
  return out;
}

// Path that runs down from `start` to `bottom` as the Bessel bridge over
// [0, t_hit] and then continues as bottom + BES(3, μ), sampled on k·dt.
std::vector<double> down_then_bessel(double start, double bottom, double t_hit, double mu,
                                     double horizon, double dt, RngStream& rng) {
  const std::size_t n = grid_count(horizon, dt);
  std::vector<double> values(n);
  std::size_t k_split = 0;
  while (k_split < n && static_cast<double>(k_split) * dt < t_hit) ++k_split;

  if (k_split > 0) {
    std::vector<double> times(k_split + 1);
    for (std::size_t k = 0; k < k_split; ++k) times[k] = static_cast<double>(k) * dt;
    times[k_split] = t_hit;
    const auto r = sample_bessel3_bridge(times, start - bottom, rng);
    for (std::size_t k = 0; k < k_split; ++k) values[k] = bottom + r[k];
  }
  if (k_split < n) {
    std::vector<double> times(n - k_split);
    for (std::size_t k = k_split; k < n; ++k) times[k - k_split] = static_cast<double>(k) * dt;
    std::vector<double> r;
    if (times.front() == t_hit) {
      // the switch sits on the grid
      r = bes3_from_origin(t_hit, std::span<const double>(times).subspan(1), mu, rng);
      r.insert(r.begin(), 0.0);
    } else {
      r = bes3_from_origin(t_hit, times, mu, rng);
    }
    for (std::size_t k = k_split; k < n; ++k) values[k] = bottom + r[k - k_split];
  }
  return values;
}

}  // namespace

TauGammaSample sample_tau_gamma(const LawParams& p, RngStream& rng) {
  const auto table = frak_T_table(p);
  TauGammaSample s{};
  s.tau = table->quantile(rng.uniform());
  const double k = 2.0 * (p.alpha + p.beta);
  const double top = 2.0 * p.alpha * s.tau;
  s.gamma_hat = std::clamp(-std::log1p(rng.uniform() * std::expm1(-k * top)) / k, 0.0, top);
  return s;
}

double sample_inverse_gaussian_hitting(double mu, double y, RngStream& rng) {
  if (!(mu > 0.0)) throw std::invalid_argument("inverse Gaussian needs mu > 0");
  if (y < 0.0) throw std::invalid_argument("inverse Gaussian needs y >= 0");
  if (y == 0.0) return 0.0;
  const double m = y / mu;
  const double s = y * y;
  const double nu = rng.normal();
  const double r = m * nu * nu / (2.0 * s);
  // smaller root of the quadratic, written without cancellation
  const double x = m / (1.0 + r + std::sqrt(r * (r + 2.0)));
  return (rng.uniform() * (m + x) <= m) ? x : m * m / x;
}

std::vector<double> sample_bessel3_bridge(std::span<const double> times, double x0, RngStream& rng) {
  if (times.size() < 2) throw std::invalid_argument("bridge needs at least two times");
  const double t_end = times.back();
  std::vector<double> out(times.size());
  std::array<double, 3> b{x0, 0.0, 0.0};
  out[0] = std::abs(x0);
  for (std::size_t i = 1; i + 1 < times.size(); ++i) {
    const double h = times[i] - times[i - 1];
    const double rest = t_end - times[i - 1];
    const double frac = h / rest;
    const double sd = std::sqrt(h * (t_end - times[i]) / rest);
    for (double& c : b) c += -c * frac + sd * rng.normal();
    out[i] = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
  }
  out.back() = 0.0;
  return out;
}

std::vector<double> sample_brownian_excursion(std::size_t n_steps, RngStream& rng) {
  if (n_steps < 2) throw std::invalid_argument("excursion needs n_steps >= 2");
  std::vector<double> u(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k) u[k] = static_cast<double>(k) / static_cast<double>(n_steps);
  return sample_bessel3_bridge(u, 0.0, rng);
}

ExcursionFeatures features_from_decomposition(const LawParams& p, double tau, double gamma_hat,
                                              double hit_time, double chi3) {
  const double a = p.alpha;
  ExcursionFeatures f;
  f.zeta = tau + hit_time;
  f.L = tau - gamma_hat / (2.0 * a);
  f.zeta_minus_L = hit_time + gamma_hat / (2.0 * a);
  f.w_zeta = a * (tau - hit_time - gamma_hat / a);
  f.h = (tau > 0.0) ? std::sqrt(std::max(0.0, f.L * (tau - f.L) / tau)) * chi3 : 0.0;
  return f;
}

SampledExcursion sample_features_direct_full(const LawParams& p, RngStream& rng) {
  p.validate();
  SampledExcursion s;
  const auto tg = sample_tau_gamma(p, rng);
  s.tau = tg.tau;
  s.gamma_hat = tg.gamma_hat;
  s.hit_time = sample_inverse_gaussian_hitting(p.alpha + p.beta, tg.gamma_hat, rng);
  const double n1 = rng.normal(), n2 = rng.normal(), n3 = rng.normal();
  s.features = features_from_decomposition(p, s.tau, s.gamma_hat, s.hit_time,
                                           std::sqrt(n1 * n1 + n2 * n2 + n3 * n3));
  return s;
}

ExcursionFeatures sample_features_direct(const LawParams& p, RngStream& rng) {
  return sample_features_direct_full(p, rng).features;
}

SampledExcursion sample_generic_excursion(const LawParams& p, double dt, RngStream& rng) {
  p.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  const double a = p.alpha;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const auto tg = sample_tau_gamma(p, rng);
    const double hit = sample_inverse_gaussian_hitting(a + p.beta, tg.gamma_hat, rng);
    if (hit / dt > kMaxSteps) continue;

    SampledExcursion s;
    s.tau = tg.tau;
    s.gamma_hat = tg.gamma_hat;
    s.hit_time = hit;
    s.features = features_from_decomposition(p, s.tau, s.gamma_hat, hit, 0.0);
    const double L = s.features.L;

    // [0, τ]: √τ e(t/τ) + 2αt - αt
    const auto t1 = segment_times(s.tau, dt, L);
    std::vector<double> u(t1.size());
    for (std::size_t i = 0; i < t1.size(); ++i) u[i] = t1[i] / s.tau;
    u.back() = 1.0;
    const auto e = sample_bessel3_bridge(u, 0.0, rng);
    const double root_tau = std::sqrt(s.tau);
    auto& path = s.path;
    for (std::size_t i = 0; i < t1.size(); ++i) {
      path.times.push_back(t1[i]);
      path.values.push_back(root_tau * e[i] + a * t1[i]);
      if (t1[i] == L) s.features.h = root_tau * e[i];
    }

    // [τ, ζ]: 2ατ - γ̂ + (Bessel bridge from γ̂ to 0) - αt
    if (hit > 0.0) {
      const auto t2 = segment_times(hit, dt, -1.0);
      const auto r = sample_bessel3_bridge(t2, s.gamma_hat, rng);
      for (std::size_t i = 1; i < t2.size(); ++i) {
        const double t = s.tau + t2[i];
        path.times.push_back(t);
        path.values.push_back(2.0 * a * s.tau - s.gamma_hat + r[i] - a * t);
      }
      path.times.back() = s.features.zeta;
      path.values.back() = s.features.w_zeta;
    }
    return s;
  }
  throw Error("generic excursion: hitting segment exceeded the step cap three times");
}

GridPath sample_bes3_drift(double mu, double horizon, double dt, RngStream& rng) {
  if (mu < 0.0) throw std::invalid_argument("BES(3, mu) needs mu >= 0");
  const std::size_t n = grid_count(horizon, dt);
  std::vector<double> times(n - 1);
  for (std::size_t k = 1; k < n; ++k) times[k - 1] = static_cast<double>(k) * dt;
  auto r = bes3_from_origin(0.0, times, mu, rng);
  r.insert(r.begin(), 0.0);
  return GridPath(0.0, dt, std::move(r));
}

WilliamsPath sample_williams_path(double mu, double horizon, double dt, RngStream& rng) {
  if (!(mu > 0.0)) throw std::invalid_argument("Williams path needs mu > 0");
  const double gamma = rng.exponential(2.0 * mu);
  const double t_hit = sample_inverse_gaussian_hitting(mu, gamma, rng);
  auto values = down_then_bessel(0.0, -gamma, t_hit, mu, horizon, dt, rng);
  return {GridPath(0.0, dt, std::move(values)), gamma, t_hit};
}

BesselFromMin sample_bessel_from_min(double b, double mu, double horizon, double dt,
                                     RngStream& rng) {
  if (!(b > 0.0)) throw std::invalid_argument("Bessel from minimum needs b > 0");
  if (!(mu > 0.0)) throw std::invalid_argument("Bessel from minimum needs mu > 0");
  const double g =
      std::clamp(std::log1p(rng.uniform() * std::expm1(2.0 * mu * b)) / (2.0 * mu), 0.0, b);
  const double t_hit = sample_inverse_gaussian_hitting(mu, b - g, rng);
  auto values = down_then_bessel(b, g, t_hit, mu, horizon, dt, rng);
  return {GridPath(0.0, dt, std::move(values)), g, t_hit};
}

GridPath sample_post_D(const LawParams& p, double horizon, double dt, RngStream& rng) {
  p.validate();
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
  const GridPath r = sample_bes3_drift(p.alpha + p.beta, horizon, dt, rng);
  std::vector<double> v(r.values().begin(), r.values().end());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= p.alpha * r.time(k);
  return GridPath(0.0, dt, std::move(v));
}

double sample_frak_T_pathwise(const LawParams& p, double dt, RngStream& rng) {
  p.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  const double mu = p.alpha + p.beta;
  const double slope = 2.0 * p.alpha;
  double t = 1e-10;
  const double s0 = std::sqrt(t);
  std::array<double, 3> w{mu * t + s0 * rng.normal(), s0 * rng.normal(), s0 * rng.normal()};
  auto norm = [&w] { return std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]); };
  double r = norm();
  double y = r - slope * t;
  if (y <= 0.0) return t;
  for (double steps = 0; steps < kMaxSteps; ++steps) {
    // short steps relative to R² keep the radial motion locally one-dimensional,
    // which the bridge test below assumes
    const double h = std::max(1e-16, std::min({dt, 0.01 * t, 0.01 * r * r}));
    const double sh = std::sqrt(h);
    w[0] += mu * h + sh * rng.normal();
    w[1] += sh * rng.normal();
    w[2] += sh * rng.normal();
    r = norm();
    const double y_next = r - slope * (t + h);
    if (y_next <= 0.0) return t + h * y / (y - y_next);
    if (rng.uniform() < std::exp(-2.0 * y * y_next / h)) return t + 0.5 * h;
    t += h;
    y = y_next;
  }
  throw Error("frak T: step cap exceeded");
}

DDecomposition sample_D_decomposition(const LawParams& p, double dt, RngStream& rng,
                                      ArgminMethod method) {
  p.validate();
  DDecomposition out{};
  const double down = p.alpha - p.beta;
  const double up = p.alpha + p.beta;
  const double e = rng.exponential(2.0 * down);
  out.gamma = -e;
  out.t_prime = sample_inverse_gaussian_hitting(down, e, rng);

  if (method == ArgminMethod::Exact) {
    out.t_second = sample_inverse_gaussian_hitting(up, rng.exponential(2.0 * up), rng);
  } else {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    const double stale = 10.0 / (up * up);
    const double sd = std::sqrt(dt);
    double x = 0.0, best = 0.0;
    std::size_t k = 0, k_best = 0;
    while (static_cast<double>(k - k_best) * dt <= stale) {
      if (static_cast<double>(++k) > kMaxSteps) throw Error("D decomposition: step cap exceeded");
      x += up * dt + sd * rng.normal();
      if (x < best) {
        best = x;
        k_best = k;
      }
    }
    out.t_second = static_cast<double>(k_best) * dt;
  }
  out.D = out.t_prime + out.t_second;
  return out;
}

StraddleSampler::StraddleSampler(const LawParams& p, std::size_t pool_size, RngStream& rng) {
  if (pool_size < 1000) throw std::invalid_argument("straddle pool needs at least 1000 samples");
  pool_.reserve(pool_size);
  cum_.reserve(pool_size);
  double total = 0.0;
  for (std::size_t i = 0; i < pool_size; ++i) {
    pool_.push_back(sample_features_direct(p, rng));
    total += pool_.back().zeta;
    cum_.push_back(total);
  }
}

StraddleSample StraddleSampler::draw(RngStream& rng) const {
  const double target = rng.uniform() * cum_.back();
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cum_.begin()), cum_.size() - 1);
  StraddleSample s{};
  s.features = pool_[i];
  s.lifetime = s.features.zeta;
  s.U = rng.uniform();
  s.G = -s.U * s.lifetime;
  s.D = (1.0 - s.U) * s.lifetime;
  return s;
}

StraddleSample sample_straddling_features(const LawParams& p, RngStream& rng, std::size_t pool_size) {
  const StraddleSampler sampler(p, pool_size, rng);
  return sampler.draw(rng);
}

}  // namespace lipmin
