#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "lipmin/errors.hpp"
#include "lipmin/laws.hpp"
#include "lipmin/quadrature.hpp"
#include "lipmin/rng.hpp"
#include "oracles.hpp"

using namespace lipmin;
namespace to = testing_oracle;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double integral(const std::function<double(double)>& f) { return quad::integrate_sqrt_singular(f, 0.0, kInf, 1e-12).value; }

LawParams random_params(RngStream& r) {
  const double a = 0.2 + 2.0 * r.uniform();
  return {a, (2.0 * r.uniform() - 1.0) * 0.95 * a};
}

}  // namespace

TEST_CASE("normal tails") {
  CHECK(normal_tail(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-14));
  CHECK(normal_tail(5.0) == doctest::Approx(2.866515718791939e-7).epsilon(1e-14));
  CHECK(normal_tail(10.0) == doctest::Approx(7.619853024160527e-24).epsilon(1e-13));
  CHECK(normal_tail(-2.0) == doctest::Approx(1.0 - 0.022750131948179195).epsilon(1e-14));
  for (double x : {0.0, 1.0, 7.0, 30.0})
    CHECK(scaled_normal_tail(x) == doctest::Approx(std::exp(0.5 * x * x) * 0.5 * std::erfc(x / std::numbers::sqrt2)).epsilon(1e-12));
  // asymptotic regime: e^{x²/2}Φ̄(x) ≈ φ(0)/x (1 - 1/x² + 3/x⁴)
  const double x = 80.0;
  CHECK(scaled_normal_tail(x) == doctest::Approx((1.0 - 1.0 / (x * x) + 3.0 / std::pow(x, 4)) / (x * std::sqrt(2.0 * std::numbers::pi))).epsilon(1e-10));
}

TEST_CASE("params validation") {
  CHECK_THROWS_AS((LawParams{1.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((LawParams{0.0, 0.0}.validate()), DomainError);
  CHECK_NOTHROW((LawParams{1.0, -0.99}.validate()));
  CHECK(feature_kind_from_string("zeta-minus-L") == FeatureKind::ZetaMinusL);
  CHECK(to_string(FeatureKind::WZeta) == "w-zeta");
  CHECK_THROWS_AS(feature_kind_from_string("nope"), std::invalid_argument);
}

TEST_CASE("psi joint laplace") {
  RngStream r(1, 0);
  for (int i = 0; i < 20; ++i) CHECK(psi_joint_laplace(random_params(r), 0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(psi_joint_laplace({1, 0}, 0.5, 0, 0, 0) == doctest::Approx(4.0 / (2.0 + 2.0 * std::sqrt(2.0))));
  CHECK(psi_joint_laplace({1, 0}, 0.5, 0, 0, 0) == doctest::Approx(0.82843).epsilon(1e-5));
  CHECK_THROWS_AS(psi_joint_laplace({1, 0}, 0, 0, 0, 1.0), DomainError);
}

TEST_CASE("psi time reversal and scaling hold on 100 random tuples") {
  RngStream r(2, 0);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_params(r);
    const double r1 = 3 * r.uniform(), r2 = 3 * r.uniform(), r3 = 3 * r.uniform();
    const double r4 = (2 * r.uniform() - 1) * 0.9 * std::min((p.alpha + p.beta) * (p.alpha + p.beta), (p.alpha - p.beta) * (p.alpha - p.beta)) / (2 * p.alpha);
    const double v = psi_joint_laplace(p, r1, r2, r3, r4);
    CHECK(std::abs(v - psi_joint_laplace({p.alpha, -p.beta}, r1, r3, r2, -r4)) <= 1e-12);
    const double c = 0.3 + 2.0 * r.uniform();
    CHECK(std::abs(v - psi_joint_laplace({c * p.alpha, c * p.beta}, c * c * r1, c * c * r2, c * c * r3, c * r4)) <= 1e-12);
  }
}

TEST_CASE("psi derivatives at 0 give the means") {
  RngStream r(3, 0);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_params(r);
    const auto m = mean_features(p);
    const double h = 1e-5;
    // five-point central difference
    auto d = [&](int which) {
      auto at = [&](double x) {
        double rho[4] = {0, 0, 0, 0};
        rho[which] = x;
        return psi_joint_laplace(p, rho[0], rho[1], rho[2], rho[3]);
      };
      return -(-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    };
    CHECK(std::abs(d(0) - m.zeta) <= 1e-6 * std::max(1.0, m.zeta));
    CHECK(std::abs(d(1) - m.L) <= 1e-6 * std::max(1.0, m.L));
    CHECK(std::abs(d(2) - m.zeta_minus_L) <= 1e-6 * std::max(1.0, m.zeta_minus_L));
    CHECK(std::abs(d(3) - m.w_zeta) <= 1e-6 * std::max(1.0, std::abs(m.w_zeta)));
  }
}

TEST_CASE("feature laplace transforms") {
  CHECK(feature_laplace(FeatureKind::Zeta, {2, 1}, 0.0) == doctest::Approx(1.0));
  CHECK(feature_laplace(FeatureKind::Zeta, {1, 0}, 0.5) == doctest::Approx(0.82843).epsilon(1e-5));
  CHECK(feature_laplace(FeatureKind::LPeak, {1, 0}, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(feature_laplace(FeatureKind::WZeta, {1, 0}, 1.0), DomainError);
  CHECK_THROWS_AS(feature_laplace(FeatureKind::Zeta, {1, 0}, -0.1), DomainError);
  RngStream r(4, 0);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_params(r);
    const double lam = 10 * r.uniform();
    CHECK(feature_laplace(FeatureKind::Zeta, p, lam) == psi_joint_laplace(p, lam, 0, 0, 0));
    CHECK(feature_laplace(FeatureKind::LPeak, p, lam) == psi_joint_laplace(p, 0, lam, 0, 0));
    CHECK(feature_laplace(FeatureKind::ZetaMinusL, p, lam) == psi_joint_laplace(p, 0, 0, lam, 0));
    const double w = 0.9 * (p.alpha + p.beta) * (p.alpha + p.beta) / (2 * p.alpha) * r.uniform();
    CHECK(feature_laplace(FeatureKind::WZeta, p, w) == psi_joint_laplace(p, 0, 0, 0, w));
  }
}

TEST_CASE("feature densities") {
  const double z1 = 2.0 * std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi) - 2.0 * (1.0 - to::normal_cdf(1.0));
  CHECK(feature_density(FeatureKind::Zeta, {1, 0}, 1.0) == doctest::Approx(z1).epsilon(1e-13));
  CHECK(z1 == doctest::Approx(0.16663).epsilon(1e-4));
  CHECK_THROWS_AS(feature_density(FeatureKind::Zeta, {1, 0.5}, 1.0), UnsupportedError);
  CHECK_THROWS_AS(feature_density(FeatureKind::WZeta, {1, 0}, 1.0), UnsupportedError);
  CHECK_THROWS_AS(feature_density(FeatureKind::LPeak, {1, 0}, 0.0), DomainError);

  const LawParams unit{1, 0};
  CHECK(std::abs(integral([&](double l) { return feature_density(FeatureKind::LPeak, unit, l); }) - 1.0) <= 1e-6);
  CHECK(std::abs(integral([&](double l) { return l * feature_density(FeatureKind::LPeak, unit, l); }) - 0.25) <= 1e-6);

  for (const LawParams p : {LawParams{1, 0}, LawParams{2, 1}, LawParams{1, -0.7}}) {
    for (auto k : {FeatureKind::LPeak, FeatureKind::ZetaMinusL}) {
      CHECK(std::abs(integral([&](double l) { return feature_density(k, p, l); }) - 1.0) <= 1e-6);
      for (double l : {1e-6, 0.01, 1.0, 10.0}) CHECK(feature_density(k, p, l) >= 0.0);
    }
  }
}

TEST_CASE("density laplace transforms match the closed forms") {
  for (double lam : {0.1, 1.0, 10.0}) {
    const LawParams unit{1, 0};
    const double z = integral([&](double l) { return std::exp(-lam * l) * feature_density(FeatureKind::Zeta, unit, l); });
    CHECK(std::abs(z - feature_laplace(FeatureKind::Zeta, unit, lam)) <= 1e-5);
    for (const LawParams p : {LawParams{1, 0}, LawParams{1, 0.5}, LawParams{2, -1}}) {
      for (auto k : {FeatureKind::LPeak, FeatureKind::ZetaMinusL}) {
        const double q = integral([&](double l) { return std::exp(-lam * l) * feature_density(k, p, l); });
        CHECK(std::abs(q - feature_laplace(k, p, lam)) <= 1e-5);
      }
    }
  }
}

TEST_CASE("means") {
  const auto a = mean_features({1, 0});
  CHECK(a.zeta == 0.5);
  CHECK(a.L == 0.25);
  CHECK(a.zeta_minus_L == 0.25);
  CHECK(a.w_zeta == 0.0);
  const auto b = mean_features({2, 1});
  CHECK(b.zeta == doctest::Approx(1.0 / 6.0));
  CHECK(b.L == doctest::Approx(0.125));
  CHECK(b.zeta_minus_L == doctest::Approx(1.0 / 24.0));
  CHECK(b.w_zeta == doctest::Approx(1.0 / 6.0));
  RngStream r(5, 0);
  for (int i = 0; i < 50; ++i) {
    const auto m = mean_features(random_params(r));
    CHECK(m.L + m.zeta_minus_L == m.zeta);
  }
}

TEST_CASE("tau, gamma densities") {
  const LawParams p{1, 0.3};
  CHECK(joint_density_tau_gamma(p, 1.0, -0.1) == 0.0);
  CHECK(joint_density_tau_gamma(p, 1.0, 2.0 * p.alpha + 0.1) == 0.0);
  CHECK_THROWS_AS(joint_density_tau_gamma(p, 0.0, 0.1), DomainError);
  CHECK_THROWS_AS(density_frak_T(p, -1.0), DomainError);
  CHECK_THROWS_AS(conditional_density_gamma(p, 0.1, 0.0), DomainError);

  CHECK(density_frak_T({1, 0}, 1.0) == doctest::Approx((std::exp(-0.5) - std::exp(-4.5)) / (2 * std::sqrt(2 * std::numbers::pi))).epsilon(1e-13));
  CHECK(density_frak_T({1, 0}, 1.0) == doctest::Approx(0.11879).epsilon(1e-4));

  for (double t : {0.01, 0.3, 2.0, 9.0}) {
    const double top = 2 * p.alpha * t;
    const double marginal = quad::integrate([&](double x) { return joint_density_tau_gamma(p, t, x); }, 0, top, 1e-14).value;
    CHECK(std::abs(marginal - density_frak_T(p, t)) <= 1e-8);
    CHECK(std::abs(quad::integrate([&](double x) { return conditional_density_gamma(p, x, t); }, 0, top, 1e-14).value - 1.0) <= 1e-10);
    CHECK(conditional_density_gamma(p, top * 1.01, t) == 0.0);
    for (double u : {0.0, 0.3, 0.9}) {
      const double x = u * top;
      CHECK(std::abs(joint_density_tau_gamma(p, t, x) - density_frak_T(p, t) * conditional_density_gamma(p, x, t)) <=
            1e-10 * std::max(1.0, joint_density_tau_gamma(p, t, x)));
    }
  }
  const double total = integral([&](double t) {
    return quad::integrate([&](double x) { return joint_density_tau_gamma(p, t, x); }, 0, 2 * p.alpha * t, 1e-14).value;
  });
  CHECK(std::abs(total - 1.0) <= 1e-6);
  CHECK(std::abs(integral([&](double t) { return density_frak_T(p, t); }) - 1.0) <= 1e-6);

  // E exp(-λ/𝔗) equals the last-exit transform
  for (const LawParams q : {LawParams{1, 0}, p}) {
    for (double lam : {0.5, 1.0, 3.0}) {
      const double v = integral([&](double t) { return std::exp(-lam / t) * density_frak_T(q, t); });
      CHECK(std::abs(v - last_exit_laplace(q, lam)) <= 1e-5);
    }
  }
}

TEST_CASE("hitting time law") {
  const auto h = hitting_time_law(1, 1);
  CHECK(h.density(1.0) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)).epsilon(1e-14));
  CHECK(h.laplace(0.0) == 1.0);
  CHECK_THROWS_AS(hitting_time_law(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(hitting_time_law(1, 0), std::invalid_argument);
  for (auto [mu, y] : {std::pair{1.0, 1.0}, {0.5, 2.0}, {3.0, 0.2}}) {
    const auto law = hitting_time_law(mu, y);
    CHECK(std::abs(integral([&](double t) { return law.density(t); }) - 1.0) <= 1e-6);
    CHECK(std::abs(integral([&](double t) { return t * law.density(t); }) - y / mu) <= 1e-6);
    for (double lam : {0.1, 2.0}) {
      const double q = integral([&](double t) { return std::exp(-lam * t) * law.density(t); });
      CHECK(std::abs(q - law.laplace(lam)) <= 1e-7);
    }
    for (double t : {0.05, 0.5, 3.0}) {
      const double c = quad::integrate_sqrt_singular([&](double s) { return law.density(s); }, 0.0, t, 1e-13).value;
      CHECK(std::abs(c - law.cdf(t)) <= 1e-8);
    }
  }
  CHECK(hitting_time_law(40, 40).cdf(1e4) == doctest::Approx(1.0));
}

TEST_CASE("levy measure density") {
  CHECK(levy_measure_density(1, 1) == doctest::Approx(0.16663).epsilon(1e-4));
  for (double a : {0.5, 1.0, 2.5}) {
    CHECK(std::abs(integral([&](double x) { return levy_measure_density(a, x); }) - 1.0) <= 1e-6);
    for (double x : {1e-4, 0.2, 1.0, 5.0})
      CHECK(std::abs(levy_measure_density(a, x) - feature_density(FeatureKind::Zeta, {a, 0}, x)) <= 1e-12);
  }
  CHECK_THROWS_AS(levy_measure_density(1, 0), DomainError);
}

TEST_CASE("integral identity") {
  CHECK(check_integral_identity(1, 4) < 1e-6);
  CHECK(check_integral_identity(0.25, 1) < 1e-6);
  CHECK(check_integral_identity(2, 2) < 1e-12);
}

TEST_CASE("tabulated cdf round trips") {
  const auto table = frak_T_table({1, 0});
  CHECK(table->cdf(0.0) == 0.0);
  CHECK(table->cdf(1e6) == doctest::Approx(1.0).epsilon(1e-8));
  for (double p : {1e-6, 0.01, 0.3, 0.5, 0.9, 0.999}) CHECK(table->cdf(table->quantile(p)) == doctest::Approx(p).epsilon(1e-9));
  double prev = 0.0;
  for (double t = 1e-6; t < 50; t *= 1.3) {
    const double c = table->cdf(t);
    CHECK(c >= prev);
    prev = c;
  }
  // table and direct quadrature agree
  for (double t : {0.01, 0.3, 2.0}) {
    const double q = quad::integrate_sqrt_singular([](double s) { return density_frak_T({1, 0}, s); }, 0.0, t, 1e-13).value;
    CHECK(std::abs(q - table->cdf(t)) <= 1e-8);
  }
  CHECK(frak_T_table({1, 0}) == table);
}
