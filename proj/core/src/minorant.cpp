#include "lipmin/minorant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lipmin/errors.hpp"

namespace lipmin {

bool check_existence(const ProcessSpec& spec, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  return std::visit(
      [alpha](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BrownianWithDrift>) {
          return std::abs(s.beta) < alpha;
        } else {
          const auto jm = s.jumps.mean();
          if (!jm) throw UnsupportedError("existence undecidable: jump law has no finite mean");
          return std::abs(s.d + s.rate * *jm) < alpha;
        }
      },
      spec);
}

namespace {

// Forward/backward sweep. step(k) is the α-weighted gap between points k-1 and k.
template <class Step>
std::vector<double> sweep(std::span<const double> f, Step step) {
  const std::size_t n = f.size();
  std::vector<double> g(f.begin(), f.end());
  for (std::size_t k = 1; k < n; ++k) g[k] = std::min(f[k], g[k - 1] + step(k));
  double h = f[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    h = std::min(f[k], h + step(k + 1));
    g[k] = std::min(g[k], h);
  }
  return g;
}

std::vector<std::size_t> exact_contacts(std::span<const double> f, std::span<const double> m) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (f[k] == m[k]) out.push_back(k);
  return out;
}

std::vector<double> min_left_values(const EventPath& path) {
  std::vector<double> f;
  f.reserve(path.size());
  for (const auto& b : path.segments()) f.push_back(std::min(b.left, b.right));
  return f;
}

template <class TimeAt>
ContactTimes collect_contacts(std::span<const double> f, std::span<const double> m, double tol,
                              double buffer, double tmax, double zero_slack, TimeAt time_at) {
  ContactTimes out;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] - m[k] <= tol) {
      out.indices.push_back(k);
      out.times.push_back(time_at(k));
    }
  }
  if (out.indices.empty()) throw WindowError("window too small: no contact point in window");
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    const double t = out.times[i];
    if (t <= zero_slack) {
      out.G = t;
    } else {
      if (t <= tmax - buffer) out.D = t;
      break;
    }
  }
  return out;
}

}  // namespace

MinorantResult compute_minorant(const GridPath& path, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  const double a = alpha * path.dt();
  MinorantResult r;
  r.alpha = alpha;
  r.minorant = sweep(path.values(), [a](std::size_t) { return a; });
  r.contacts = exact_contacts(path.values(), r.minorant);
  return r;
}

MinorantResult compute_minorant(const EventPath& path, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  const auto seg = path.segments();
  const auto f = min_left_values(path);
  MinorantResult r;
  r.alpha = alpha;
  r.minorant = sweep(f, [&](std::size_t k) { return alpha * (seg[k].t - seg[k - 1].t); });
  r.contacts = exact_contacts(f, r.minorant);
  return r;
}

MinorantResult compute_minorant(const Path& path, double alpha) {
  return std::visit([alpha](const auto& p) { return compute_minorant(p, alpha); }, path);
}

ContactTimes extract_contact_set(const GridPath& path, const MinorantResult& m, double tol,
                                 double buffer) {
  if (m.minorant.size() != path.size()) throw std::invalid_argument("minorant/path size mismatch");
  return collect_contacts(path.values(), m.minorant, tol, buffer, path.tmax(), 1e-9 * path.dt(),
                          [&](std::size_t k) { return path.time(k); });
}

ContactTimes extract_contact_set(const EventPath& path, const MinorantResult& m, double tol,
                                 double buffer) {
  if (m.minorant.size() != path.size()) throw std::invalid_argument("minorant/path size mismatch");
  const auto f = min_left_values(path);
  const auto seg = path.segments();
  return collect_contacts(f, m.minorant, tol, buffer, path.tmax(), 0.0,
                          [&](std::size_t k) { return seg[k].t; });
}

double brownian_contact_tolerance(double sigma, double dt, double c) {
  return c * sigma * std::sqrt(dt);
}

double recipe_left_margin(double alpha, double beta) {
  return 10.0 / (2.0 * (alpha * alpha - beta * beta));
}

RecipeTimes recipe_times(const GridPath& path, double alpha, double left_margin) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  const std::size_t n = path.size();
  const double zero_slack = 1e-9 * path.dt();

  double left_inf = std::numeric_limits<double>::infinity();
  std::size_t left_arg = n;
  std::size_t k = 0;
  for (; k < n && path.time(k) <= zero_slack; ++k) {
    const double v = path[k] - alpha * path.time(k);
    if (v < left_inf) {
      left_inf = v;
      left_arg = k;
    }
  }
  if (left_arg == n) throw WindowError("window has no point at or before 0");
  if (left_arg == 0 || path.time(left_arg) < path.tmin() + left_margin)
    throw TruncationError("truncation unsafe: left infimum attained near the window edge");

  std::size_t s = n;
  for (; k < n; ++k) {
    if (path[k] - alpha * path.time(k) <= left_inf) {
      s = k;
      break;
    }
  }
  if (s == n) throw TruncationError("truncation unsafe: S not reached inside the window");

  double right_inf = std::numeric_limits<double>::infinity();
  std::size_t d = n;
  for (std::size_t j = s; j < n; ++j) {
    const double v = path[j] + alpha * path.time(j);
    if (v < right_inf) {
      right_inf = v;
      d = j;
    }
  }
  if (d == n - 1) throw TruncationError("truncation unsafe: right infimum on the window edge");

  return {path.time(s), path.time(d), s, d, path.time(left_arg)};
}

RecipeTimes recipe_times(const EventPath& path, double alpha, double left_margin) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  const auto seg = path.segments();
  const std::size_t n = seg.size();
  const double slope = path.slope();

  double left_inf = std::numeric_limits<double>::infinity();
  std::size_t left_arg = n;
  std::size_t i = 0;
  for (; i < n && seg[i].t <= 0.0; ++i) {
    const double v = std::min(seg[i].left, seg[i].right) - alpha * seg[i].t;
    if (v < left_inf) {
      left_inf = v;
      left_arg = i;
    }
  }
  if (left_arg == n) throw WindowError("window has no point at or before 0");
  if ((left_arg == 0 && n > 1) || seg[left_arg].t < path.tmin() + left_margin)
    throw TruncationError("truncation unsafe: left infimum attained near the window edge");

  // S: X - αt is affine with slope (d - α) on each open segment, so the first
  // crossing is either inside a segment or at a breakpoint.
  std::optional<double> S;
  std::size_t s_seg = 0;  // segment [seg[s_seg].t, seg[s_seg+1].t) that contains S
  for (std::size_t j = (i == 0 ? 0 : i - 1); j < n && !S; ++j) {
    const double tj = seg[j].t;
    if (tj > 0.0 && std::min(seg[j].left, seg[j].right) - alpha * tj <= left_inf) {
      S = tj;
      s_seg = j;
      break;
    }
    if (j + 1 < n && slope < alpha) {
      const double start = seg[j].right - alpha * tj;
      const double cross = tj + (start - left_inf) / (alpha - slope);
      if (cross > 0.0 && cross >= tj && cross < seg[j + 1].t) {
        S = cross;
        s_seg = j;
      }
    }
  }
  if (!S) throw TruncationError("truncation unsafe: S not reached inside the window");

  // D: X + αt is affine with slope (d + α) between breakpoints.
  const double s_val = path.value(*S) + alpha * *S;
  double best = std::min(s_val, path.left_limit(*S) + alpha * *S);
  double d_time = *S;
  std::size_t d_idx = s_seg;
  for (std::size_t j = s_seg + 1; j < n; ++j) {
    const double v = std::min(seg[j].left, seg[j].right) + alpha * seg[j].t;
    if (v < best) {
      best = v;
      d_time = seg[j].t;
      d_idx = j;
    }
  }
  if (d_idx == n - 1 && n > 1) throw TruncationError("truncation unsafe: right infimum on the window edge");
  return {*S, d_time, s_seg, d_idx, seg[left_arg].t};
}

Sawtooth sawtooth_segment(double t_left, double v_left, double t_right, double v_right, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(t_left < t_right)) throw std::invalid_argument("sawtooth: need t_left < t_right");
  const double span = alpha * (t_right - t_left);
  if (std::abs(v_right - v_left) > span * (1.0 + 1e-12))
    throw std::invalid_argument("sawtooth: invalid contact pair, |vR - vL| > alpha (tR - tL)");
  double t_star = (v_right - v_left + alpha * (t_right + t_left)) / (2.0 * alpha);
  t_star = std::clamp(t_star, t_left, t_right);
  return {t_left, v_left, t_right, v_right, alpha, t_star, v_left + alpha * (t_star - t_left)};
}

}  // namespace lipmin
