#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "lipmin/harness/io.hpp"
#include "lipmin/harness/report.hpp"
#include "lipmin/harness/stats.hpp"
#include "lipmin/harness/suites.hpp"
#include "oracles.hpp"

using namespace lipmin;
namespace to = testing_oracle;

TEST_CASE("kolmogorov distribution tail") {
  CHECK(stats::kolmogorov_sf(0.0) == doctest::Approx(1.0));
  CHECK(stats::kolmogorov_sf(1.3580986393) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(stats::kolmogorov_sf(1.6276236115) == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(stats::kolmogorov_sf(1.18 - 1e-12) == doctest::Approx(stats::kolmogorov_sf(1.18 + 1e-12)).epsilon(1e-9));
  CHECK(stats::kolmogorov_sf(10.0) < 1e-80);
}

TEST_CASE("one-sample KS: calibration, degenerate rejection, errors") {
  const auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  RngStream r(1, 0);
  int ok = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> x(10000);
    for (double& v : x) v = r.uniform();
    const auto k = stats::ks_one_sample(x, uniform_cdf);
    CHECK(k.statistic >= 0.0);
    CHECK(k.statistic <= 1.0);
    ok += k.p > 1e-3;
  }
  CHECK(ok >= 99);

  const auto degenerate = stats::ks_one_sample(std::vector<double>(1000, 0.3), to::normal_cdf);
  CHECK(degenerate.p < 1e-10);
  CHECK(degenerate.statistic <= 1.0);
  CHECK_THROWS_AS(stats::ks_one_sample(std::vector<double>(19, 0.5), uniform_cdf), std::invalid_argument);
  std::vector<double> spread(100);
  for (std::size_t i = 0; i < spread.size(); ++i) spread[i] = static_cast<double>(i) / 100.0;
  CHECK_THROWS_AS(stats::ks_one_sample(spread, [](double x) { return 1.0 - x; }), std::invalid_argument);
}

TEST_CASE("two-sample KS: identical, same law, shifted law, errors") {
  RngStream r(2, 0);
  std::vector<double> a(500);
  for (double& v : a) v = r.normal();
  const auto same = stats::ks_two_sample(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(same.p == doctest::Approx(1.0));

  int ok = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> x(2000), y(1500);
    for (double& v : x) v = r.normal();
    for (double& v : y) v = r.normal();
    ok += stats::ks_two_sample(x, y).p > 1e-3;
  }
  CHECK(ok >= 99);

  std::vector<double> x(1000), y(1000);
  for (double& v : x) v = r.normal();
  for (double& v : y) v = 3.0 + r.normal();
  CHECK(stats::ks_two_sample(x, y).p < 1e-6);
  CHECK_THROWS(stats::ks_two_sample({}, x));
}

TEST_CASE("moment check") {
  CHECK(stats::moment_check(std::vector<double>(50, 2.5), 2.5).pass);
  RngStream r(3, 0);
  std::vector<double> u(10000);
  for (double& v : u) v = r.uniform();
  const auto good = stats::moment_check(u, 0.5);
  CHECK(good.pass);
  CHECK(good.n == 10000);
  CHECK(good.se == doctest::Approx(std::sqrt(1.0 / 12.0) / 100.0).epsilon(0.05));
  CHECK_FALSE(stats::moment_check(u, 0.6).pass);
  CHECK_THROWS_AS(stats::moment_check(std::vector<double>(29, 1.0), 1.0), std::invalid_argument);
}

TEST_CASE("report records and JSON") {
  const auto k = ks_record("ks check", {0.01, 0.5}, 100, 7);
  CHECK(k.pass);
  CHECK_FALSE(ks_record("ks check", {0.5, 1e-4}, 100, 7).pass);
  CHECK(bound_record("b", 1.0, 1.0).pass);
  CHECK_FALSE(bound_record("b", 1.1, 1.0).pass);

  Report rep;
  rep.suite = "laws";
  rep.n = 10;
  rep.seed = 3;
  rep.pass = true;
  rep.wall_time = 12.5;
  CriterionOutcome c;
  c.id = 14;
  c.title = "t";
  c.pass = true;
  c.checks = {k};
  rep.criteria = {c};
  const auto j = nlohmann::json::parse(report_to_json(rep));
  CHECK(j.at("schema_version") == kReportSchemaVersion);
  CHECK(j.at("suite") == "laws");
  CHECK(j.at("pass") == true);
  CHECK_FALSE(j.contains("wall_time"));
  CHECK(nlohmann::json::parse(report_to_json(rep, true)).contains("wall_time"));
}

TEST_CASE("suite runs are deterministic and names are validated") {
  const auto a = report_to_json(run_suite("minorant", 2000, 99));
  const auto b = report_to_json(run_suite("minorant", 2000, 99));
  CHECK(a == b);
  const auto r = run_suite("minorant", 2000, 99);
  CHECK(r.pass == std::all_of(r.criteria.begin(), r.criteria.end(), [](const auto& c) { return c.pass; }));
  CHECK(is_suite_name("all"));
  CHECK_FALSE(is_suite_name("bogus"));
  CHECK_THROWS_AS(run_suite("bogus", 100, 1), std::invalid_argument);
  CHECK(acceptance_criteria().size() == 15);
  CHECK(criterion_by_id(6).slow);
}

TEST_CASE("path and minorant IO round trips") {
  RngStream r(4, 0);
  const Path grid = simulate_brownian_two_sided({0.1, 1.0}, {-1.0, 1.0}, 0.01, r);
  std::stringstream s1;
  io::write_path_json(grid, s1);
  const auto back = io::read_path_json(s1);
  const auto& g0 = std::get<GridPath>(grid);
  const auto& g1 = std::get<GridPath>(back);
  CHECK(g1.t0() == g0.t0());
  CHECK(g1.dt() == g0.dt());
  CHECK(std::equal(g0.values().begin(), g0.values().end(), g1.values().begin(), g1.values().end()));

  const Path ev = simulate_compound_poisson({0.5, 2.0, {JumpLaw::Kind::Normal, 0.0, 1.0}}, {-3.0, 3.0}, r);
  std::stringstream s2;
  io::write_path_json(ev, s2);
  const auto eb = std::get<EventPath>(io::read_path_json(s2));
  const auto& e0 = std::get<EventPath>(ev);
  REQUIRE(eb.size() == e0.size());
  CHECK(eb.slope() == e0.slope());
  for (std::size_t i = 0; i < eb.size(); ++i) {
    CHECK(eb.segments()[i].t == e0.segments()[i].t);
    CHECK(eb.segments()[i].left == e0.segments()[i].left);
    CHECK(eb.segments()[i].right == e0.segments()[i].right);
  }

  std::stringstream bad("{\"t0\": 0}");
  CHECK_THROWS_AS(io::read_path_json(bad), std::runtime_error);

  std::stringstream csv;
  io::write_path_csv(Path(GridPath(0.0, 0.5, {1.0, 2.0})), csv);
  CHECK(csv.str() == "t,x\n0,1\n0.5,2\n");

  std::stringstream m;
  io::write_minorant_json(MinorantResult{1.5, {0.0, 1.0}, {0}}, m);
  const auto mj = nlohmann::json::parse(m.str());
  CHECK(mj.at("alpha") == 1.5);
  CHECK(mj.at("contacts").size() == 1);
}
