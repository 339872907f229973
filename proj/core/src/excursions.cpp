#include "lipmin/excursions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lipmin/errors.hpp"

namespace lipmin {

namespace {

Excursion slice(const GridPath& path, std::size_t from, std::size_t to) {
  Excursion e;
  e.start = path.time(from);
  const double x0 = path[from];
  e.times.reserve(to - from + 1);
  e.values.reserve(to - from + 1);
  for (std::size_t k = from; k <= to; ++k) {
    e.times.push_back(static_cast<double>(k - from) * path.dt());
    e.values.push_back(path[k] - x0);
  }
  return e;
}

}  // namespace

ExcursionBatch extract_generic_excursions(const GridPath& path, const ContactTimes& contacts,
                                          double buffer) {
  ExcursionBatch out;
  const auto& idx = contacts.indices;
  if (idx.size() < 2 || !contacts.D) {
    out.too_few_contacts = true;
    return out;
  }
  const double lo = path.tmin() + buffer;
  const double hi = path.tmax() - buffer;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    const double a = path.time(idx[i]);
    const double b = path.time(idx[i + 1]);
    if (a < *contacts.D || a < lo) continue;
    if (b > hi) break;
    out.excursions.push_back(slice(path, idx[i], idx[i + 1]));
  }
  if (out.excursions.empty()) out.too_few_contacts = true;
  return out;
}

StraddlingExcursion straddling_excursion(const GridPath& path, const ContactTimes& contacts) {
  if (!contacts.G || !contacts.D) throw WindowError("straddling excursion needs both G and D in the window");
  const std::size_t g = path.nearest_index(*contacts.G);
  const std::size_t d = path.nearest_index(*contacts.D);
  return {*contacts.G, *contacts.D, slice(path, g, d)};
}

ExcursionFeatures excursion_features(const Excursion& exc, double alpha) {
  if (exc.times.size() < 2) throw std::invalid_argument("excursion needs at least two samples");
  ExcursionFeatures f;
  f.zeta = exc.lifetime();
  f.w_zeta = exc.values.back() - exc.values.front();
  if (std::abs(f.w_zeta) > alpha * f.zeta * (1.0 + 1e-9))
    throw std::invalid_argument("corrupt excursion: |w_zeta| > alpha * zeta");
  const Sawtooth saw = sawtooth_segment(0.0, 0.0, f.zeta, f.w_zeta, alpha);
  f.L = saw.t_star;
  f.zeta_minus_L = (alpha * f.zeta - f.w_zeta) / (2.0 * alpha);

  const auto it = std::lower_bound(exc.times.begin(), exc.times.end(), f.L);
  std::size_t j = static_cast<std::size_t>(it - exc.times.begin());
  if (j == exc.times.size()) j = exc.times.size() - 1;
  if (j > 0 && f.L - exc.times[j - 1] <= exc.times[j] - f.L) --j;
  f.h = std::max(0.0, exc.values[j] - saw(exc.times[j]));
  return f;
}

}  // namespace lipmin
