#include "lipmin/harness/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace lipmin::oracle {

namespace {

template <class Step>
std::vector<double> push_outward(const std::vector<double>& f, Step step) {
  const std::size_t n = f.size();
  std::vector<double> m(f);
  for (std::size_t i = 0; i < n; ++i) {
    double v = f[i];
    for (std::size_t k = i + 1; k < n; ++k) {
      v += step(k);
      m[k] = std::min(m[k], v);
    }
    v = f[i];
    for (std::size_t k = i; k-- > 0;) {
      v += step(k + 1);
      m[k] = std::min(m[k], v);
    }
  }
  return m;
}

}  // namespace

std::vector<double> brute_force_minorant(const GridPath& path, double alpha) {
  const double a = alpha * path.dt();
  const std::vector<double> f(path.values().begin(), path.values().end());
  return push_outward(f, [a](std::size_t) { return a; });
}

std::vector<double> brute_force_minorant(const EventPath& path, double alpha) {
  const auto seg = path.segments();
  std::vector<double> f;
  for (const auto& b : seg) f.push_back(std::min(b.left, b.right));
  return push_outward(f, [&](std::size_t k) { return alpha * (seg[k].t - seg[k - 1].t); });
}

std::vector<double> brute_force_minorant_direct(const GridPath& path, double alpha) {
  const std::size_t n = path.size();
  std::vector<double> m(n);
  for (std::size_t k = 0; k < n; ++k) {
    double best = path[k];
    for (std::size_t i = 0; i < n; ++i) {
      const double gap = static_cast<double>(i > k ? i - k : k - i) * path.dt();
      best = std::min(best, path[i] + alpha * gap);
    }
    m[k] = best;
  }
  return m;
}

double conditioned_bm_rejection(double b, double mu, double t, double dt, RngStream& rng) {
  if (!(b > 0.0) || !(mu > 0.0) || !(t > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("conditioned_bm_rejection: need b, mu, t, dt > 0");
  const auto steps = static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
  const double h = t / static_cast<double>(steps);
  const double sh = std::sqrt(h);
  for (int tries = 0; tries < 1000000; ++tries) {
    double x = b;
    bool alive = true;
    for (std::size_t k = 0; k < steps && alive; ++k) {
      const double next = x + mu * h + sh * rng.normal();
      if (next <= 0.0 || rng.uniform() < std::exp(-2.0 * x * next / h)) alive = false;
      x = next;
    }
    if (alive && rng.uniform() < -std::expm1(-2.0 * mu * x)) return x;
  }
  throw std::runtime_error("conditioned_bm_rejection: acceptance rate too low");
}

}  // namespace lipmin::oracle
