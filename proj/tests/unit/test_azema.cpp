#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lipmin/azema.hpp"
#include "lipmin/errors.hpp"
#include "lipmin/minorant.hpp"
#include "lipmin/samplers.hpp"

using namespace lipmin;

namespace {

double median(std::vector<double> x) {
  std::nth_element(x.begin(), x.begin() + x.size() / 2, x.end());
  return x[x.size() / 2];
}

}  // namespace

TEST_CASE("Z is 1 up to S, in (0, 1] after, and 1 at new running minima") {
  RngStream r(1, 0);
  const double alpha = 1.0;
  for (int i = 0; i < 50; ++i) {
    const auto path = simulate_brownian_two_sided({}, {-20.0, 10.0}, 1e-3, r);
    RecipeTimes rt{};
    try {
      rt = recipe_times(path, alpha, recipe_left_margin(alpha, 0.0));
    } catch (const TruncationError&) {
      continue;
    }
    const auto z = compute_Z_D(path, alpha, rt.S);
    REQUIRE(z.S == rt.S);
    double inf = path[rt.S_index] + alpha * path.time(rt.S_index);
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k <= rt.S_index) {
        REQUIRE(z.Z[k] == 1.0);
        continue;
      }
      REQUIRE(z.Z[k] > 0.0);
      REQUIRE(z.Z[k] <= 1.0);
      const double y = path[k] + alpha * path.time(k);
      if (y <= inf) REQUIRE(z.Z[k] == 1.0);
      inf = std::min(inf, y);
    }
  }
}

TEST_CASE("compute_Z_D rejects S outside or at the window edge") {
  const GridPath p(0.0, 1.0, {0.0, 1.0, 2.0, 3.0});
  CHECK_THROWS_AS(compute_Z_D(p, 1.0, 0.0), WindowError);
  CHECK_THROWS_AS(compute_Z_D(p, 1.0, 3.0), WindowError);
  CHECK_THROWS_AS(compute_Z_D(p, 1.0, 9.0), WindowError);
  CHECK_NOTHROW(compute_Z_D(p, 1.0, 1.0));
}

TEST_CASE("bridge minima sit below both endpoints") {
  CHECK(bridge_minimum(1.0, 2.0, 0.1, 1.0) == 1.0);
  RngStream r(2, 0);
  for (int i = 0; i < 1000; ++i) {
    const double a = r.normal(), b = r.normal();
    REQUIRE(bridge_minimum(a, b, 0.01, r.uniform()) <= std::min(a, b));
  }
}

TEST_CASE("Ito identity residual shrinks with the step") {
  const GridPath single(0.0, 1.0, {0.0});
  CHECK(ito_identity_residual(single, 1.0) == 0.0);

  std::vector<double> coarse(100), fine(100), finest(100);
  const RngStream root(3, 0);
  for (std::size_t i = 0; i < 100; ++i) {
    auto a = root.split(i), b = root.split(100 + i), c = root.split(200 + i);
    coarse[i] = simulate_ito_residual(1.0, 1.0, 1e-3, a);
    fine[i] = simulate_ito_residual(1.0, 1.0, 1e-4, b);
    finest[i] = simulate_ito_residual(1.0, 1.0, 1e-5, c);
  }
  CHECK(median(fine) / median(coarse) < 0.7);
  CHECK(median(finest) < 0.02);
}

TEST_CASE("refined recipe: Z drops below 1 right after S") {
  RngStream r(4, 0);
  int used = 0;
  for (int i = 0; i < 200; ++i) {
    try {
      const auto rr = simulate_refined_recipe(1.0, {-20.0, 15.0}, 1e-3, 5.0, r);
      const auto z = compute_Z_D(rr.path, 1.0, rr.path.time(rr.S_index), rr.step_min);
      CHECK(z.Z[rr.S_index] == 1.0);
      CHECK(z.Z[rr.S_index + 1] < 1.0);
      CHECK(rr.D_step >= rr.S_index);
      ++used;
    } catch (const TruncationError&) {
    }
  }
  CHECK(used > 150);
}

TEST_CASE("survival curve matches mean Z and the D decomposition") {
  const LawParams p{1, 0};
  const std::vector<double> times{0.0, 0.1, 0.5, 1.0, 2.0};
  RngStream r(5, 0);
  const auto curve = survival_curve(p, times, 3000, r);
  REQUIRE(curve.points.size() == times.size());
  CHECK(curve.points[0].survival == 1.0);
  for (std::size_t j = 1; j < times.size(); ++j) {
    const auto& a = curve.points[j - 1];
    const auto& b = curve.points[j];
    CHECK(b.survival <= a.survival);
    CHECK(std::abs(b.survival - b.mean_Z) <= 3.0 * b.diff_se);
    // supermartingale in mean
    CHECK(b.mean_Z <= a.mean_Z + 3.0 * std::hypot(a.mean_Z_se, b.mean_Z_se));
  }
  for (const auto& pt : curve.points) {
    CHECK(pt.mean_Z >= 0.0);
    CHECK(pt.mean_Z <= 1.0);
  }

  const std::size_t n = 20000;
  std::vector<double> d(n);
  for (double& x : d) x = sample_D_decomposition(p, 1e-3, r, ArgminMethod::Exact).D;
  for (const auto& pt : curve.points) {
    const double s = static_cast<double>(std::count_if(d.begin(), d.end(), [&](double x) { return x > pt.t; })) / n;
    const double se = std::hypot(pt.survival_se, std::sqrt(s * (1 - s) / n));
    CHECK(std::abs(s - pt.survival) <= 3.0 * se + 1e-12);
  }

  CHECK_THROWS_AS(survival_curve({1, 0.5}, times, 3000, r), UnsupportedError);
  CHECK_THROWS_AS(survival_curve(p, times, 999, r), std::invalid_argument);
  CHECK_THROWS_AS(survival_curve(p, std::vector<double>{20.0}, 1000, r), WindowError);
}
