#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lipmin/errors.hpp"
#include "lipmin/harness/oracle.hpp"
#include "lipmin/minorant.hpp"
#include "lipmin/paths.hpp"

using namespace lipmin;

namespace {

GridPath random_grid(RngStream& r) {
  const std::size_t n = 2 + static_cast<std::size_t>(r.uniform() * 511);
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * r.uniform() - 1.0;
  return GridPath(-0.5 * static_cast<double>(n) * 0.01, 0.01, std::move(v));
}

GridPath tent_path(double alpha, int half, double dt) {
  std::vector<double> v;
  for (int k = -half; k <= half; ++k) v.push_back(alpha * std::abs(k) * dt);
  return GridPath(-half * dt, dt, std::move(v));
}

}  // namespace

TEST_CASE("minorant examples") {
  const auto m = compute_minorant(GridPath(0.0, 1.0, {0.0, 10.0, 0.0}), 1.0);
  CHECK(m.minorant == std::vector<double>{0.0, 1.0, 0.0});
  CHECK(m.contacts == std::vector<std::size_t>{0, 2});

  const auto c = compute_minorant(GridPath(0.0, 0.1, std::vector<double>(50, 3.25)), 2.0);
  for (double x : c.minorant) CHECK(x == 3.25);
  CHECK(c.contacts.size() == 50);

  const auto tent = tent_path(0.5, 64, 0.125);
  const auto t = compute_minorant(tent, 0.5);
  for (std::size_t k = 0; k < tent.size(); ++k) CHECK(t.minorant[k] == tent[k]);
  CHECK(t.contacts.size() == tent.size());
  CHECK_THROWS_AS(compute_minorant(tent, 0.0), std::invalid_argument);
}

TEST_CASE("two-pass sweep equals the brute-force oracle bit for bit on 1000 grids") {
  RngStream r(31337, 0);
  const double alphas[] = {0.5, 1.0, 2.0};
  for (int i = 0; i < 1000; ++i) {
    const auto path = random_grid(r);
    const double a = alphas[i % 3];
    const auto m = compute_minorant(path, a);
    const auto oracle = oracle::brute_force_minorant(path, a);
    REQUIRE(m.minorant == oracle);
    // an independent formulation agrees up to rounding
    const auto direct = oracle::brute_force_minorant_direct(path, a);
    for (std::size_t k = 0; k < path.size(); ++k) REQUIRE(std::abs(direct[k] - m.minorant[k]) <= 1e-12);
  }
}

TEST_CASE("minorant is Lipschitz, dominated and maximal") {
  RngStream r(4, 0);
  for (int i = 0; i < 200; ++i) {
    const auto path = random_grid(r);
    const double a = 1.0 + r.uniform();
    const auto m = compute_minorant(path, a).minorant;
    const double step = a * path.dt();
    for (std::size_t k = 0; k < path.size(); ++k) {
      REQUIRE(m[k] <= path[k]);
      if (k + 1 < path.size()) REQUIRE(std::abs(m[k + 1] - m[k]) <= step + 1e-12);
    }
    // raising any value breaks dominance or the slope bound
    const double eps = 1e-9;
    for (int spot = 0; spot < 10; ++spot) {
      const auto k = static_cast<std::size_t>(r.uniform() * static_cast<double>(path.size()));
      const double up = m[k] + eps;
      const bool dominated = up <= path[k];
      const bool lip = (k == 0 || up - m[k - 1] <= step) && (k + 1 == path.size() || up - m[k + 1] <= step);
      REQUIRE_FALSE((dominated && lip));
    }
  }
}

TEST_CASE("minorant is space-time homogeneous on grids") {
  // dyadic values and slope keep every sum exact
  RngStream r(8, 0);
  std::vector<double> v(300);
  for (double& x : v) x = std::floor(r.uniform() * 2048.0) / 1024.0;
  const double x0 = 3.5;
  std::vector<double> shifted = v;
  for (double& x : shifted) x += x0;
  const auto base = compute_minorant(GridPath(0.0, 0.125, v), 1.0);
  const auto moved = compute_minorant(GridPath(-7.25, 0.125, shifted), 1.0);
  for (std::size_t k = 0; k < v.size(); ++k) CHECK(moved.minorant[k] == base.minorant[k] + x0);
  CHECK(moved.contacts == base.contacts);
}

TEST_CASE("event path minorant equals the oracle") {
  RngStream r(21, 0);
  for (int i = 0; i < 200; ++i) {
    const JumpLaw law{JumpLaw::Kind::Normal, 0.0, 1.0};
    const auto p = simulate_compound_poisson({0.3 * (r.uniform() - 0.5), 2.0, law}, {-5.0, 5.0}, r);
    const double a = 0.5 + r.uniform();
    REQUIRE(compute_minorant(p, a).minorant == oracle::brute_force_minorant(p, a));
  }
}

TEST_CASE("existence condition") {
  CHECK(check_existence(BrownianWithDrift{0.5, 1.0}, 1.0));
  CHECK_FALSE(check_existence(BrownianWithDrift{1.0, 1.0}, 1.0));
  CHECK_FALSE(check_existence(CompoundPoissonDrift{0.0, 1.0, {JumpLaw::Kind::Constant, 0.3, 0.0}}, 0.2));
  CHECK(check_existence(CompoundPoissonDrift{1.0, 1.0, {JumpLaw::Kind::Constant, -1.0, 0.0}}, 0.2));
  CHECK_THROWS_AS(check_existence(CompoundPoissonDrift{0.0, 1.0, {JumpLaw::Kind::Cauchy, 0.0, 1.0}}, 1.0),
                  UnsupportedError);
}

TEST_CASE("contact set examples") {
  const GridPath peak(0.0, 1.0, {0.0, 10.0, 0.0});
  const auto c = extract_contact_set(peak, compute_minorant(peak, 1.0), 0.0);
  CHECK(c.indices == std::vector<std::size_t>{0, 2});
  CHECK(c.G == 0.0);
  CHECK(c.D == 2.0);

  const auto tent = tent_path(1.0, 10, 0.5);
  const auto all = extract_contact_set(tent, compute_minorant(tent, 1.0), 0.0);
  CHECK(all.indices.size() == tent.size());
  CHECK(all.G == 0.0);
  CHECK(all.D == 0.5);

  RngStream r(3, 0);
  const auto b = simulate_brownian_two_sided({}, {-10.0, 10.0}, 1e-3, r);
  const auto bc = extract_contact_set(b, compute_minorant(b, 1.0), brownian_contact_tolerance(1.0, 1e-3));
  CHECK_FALSE(bc.indices.empty());
  CHECK(brownian_contact_tolerance(2.0, 0.04) == doctest::Approx(0.2));
}

TEST_CASE("sawtooth segment") {
  const auto a = sawtooth_segment(0, 0, 2, 0, 1);
  CHECK(a.t_star == 1.0);
  CHECK(a.peak == 1.0);
  const auto b = sawtooth_segment(0, 0, 2, 2, 1);
  CHECK(b.t_star == 2.0);
  CHECK(b.peak == 2.0);
  const auto c = sawtooth_segment(0, 0, 4, 2, 1);
  CHECK(c.t_star == 3.0);
  CHECK(c.peak == 3.0);
  CHECK(c(1.0) == 1.0);
  CHECK(c(3.5) == 2.5);
  CHECK_THROWS_AS(sawtooth_segment(0, 0, 1, 2, 1), std::invalid_argument);
}

TEST_CASE("sawtooth reconstructs the minorant between contacts of a brownian path") {
  RngStream r(12, 0);
  const double a = 1.0, dt = 1e-3;
  const auto p = simulate_brownian_two_sided({}, {-5.0, 5.0}, dt, r);
  const auto m = compute_minorant(p, a);
  REQUIRE(m.contacts.size() > 2);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < m.contacts.size(); ++i) {
    const auto l = m.contacts[i], rr = m.contacts[i + 1];
    const auto s = sawtooth_segment(p.time(l), p[l], p.time(rr), p[rr], a);
    for (std::size_t k = l; k <= rr; ++k) worst = std::max(worst, std::abs(m.minorant[k] - s(p.time(k))));
  }
  CHECK(worst <= a * dt);
}

TEST_CASE("recipe times") {
  const auto tent = tent_path(1.0, 10, 0.5);
  const auto rt = recipe_times(tent, 1.0);
  CHECK(rt.S == 0.5);
  CHECK(rt.D == 0.5);

  // m(0) = X_0 = 0 and the path first meets αt at t = 2
  const GridPath p(-2.0, 0.5, {2.0, 1.5, 1.0, 0.5, 0.0, 5.0, 5.0, 5.0, 2.0, 2.5, 3.0});
  const auto r = recipe_times(p, 1.0);
  CHECK(r.S == 2.0);
  CHECK(r.D == 2.0);
  const auto c = extract_contact_set(p, compute_minorant(p, 1.0), 0.0);
  CHECK(c.D == 2.0);

  // a margin larger than the window
  CHECK_THROWS_AS(recipe_times(tent, 1.0, 100.0), TruncationError);
}

TEST_CASE("recipe D equals the first positive contact on brownian paths") {
  int compared = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    RngStream r(500 + s, 0);
    const auto p = simulate_brownian_two_sided({0.2, 1.0}, {-30.0, 15.0}, 1e-3, r);
    RecipeTimes rt{};
    try {
      rt = recipe_times(p, 1.0, recipe_left_margin(1.0, 0.2));
    } catch (const TruncationError&) {
      continue;
    }
    const auto c = extract_contact_set(p, compute_minorant(p, 1.0), 0.0);
    REQUIRE(c.D.has_value());
    CHECK(rt.D == *c.D);
    CHECK(rt.S <= rt.D);
    ++compared;
  }
  CHECK(compared >= 30);
}
