#include "lipmin/harness/report.hpp"

#include <json.hpp>

namespace lipmin {

CheckRecord ks_record(std::string name, const stats::KsResult& r, std::size_t n, std::uint64_t seed) {
  CheckRecord c;
  c.name = std::move(name);
  c.kind = "ks";
  c.statistic = r.statistic;
  c.tolerance = kPThreshold;
  c.p = r.p;
  c.pass = r.p > kPThreshold;
  c.n = n;
  c.seed = seed;
  return c;
}

CheckRecord moment_record(std::string name, const stats::MomentResult& r, std::uint64_t seed) {
  CheckRecord c;
  c.name = std::move(name);
  c.kind = "moment";
  c.statistic = r.mean;
  c.target = r.target;
  c.tolerance = r.k_sigma * r.se;
  c.pass = r.pass;
  c.n = r.n;
  c.seed = seed;
  return c;
}

CheckRecord bound_record(std::string name, double value, double bound, std::size_t n,
                         std::uint64_t seed, std::string kind) {
  CheckRecord c;
  c.name = std::move(name);
  c.kind = std::move(kind);
  c.statistic = value;
  c.tolerance = bound;
  c.pass = value <= bound;
  c.n = n;
  c.seed = seed;
  return c;
}

namespace {

nlohmann::ordered_json check_json(const CheckRecord& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["kind"] = c.kind;
  j["statistic"] = c.statistic;
  j["target"] = c.target;
  j["tolerance"] = c.tolerance;
  if (c.p) j["p_value"] = *c.p;
  j["pass"] = c.pass;
  j["n"] = c.n;
  j["seed"] = c.seed;
  return j;
}

}  // namespace

std::string report_to_json(const Report& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["suite"] = r.suite;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["pass"] = r.pass;
  auto& crit = j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& c : r.criteria) {
    nlohmann::ordered_json o;
    o["id"] = c.id;
    o["title"] = c.title;
    o["pass"] = c.pass;
    o["rerun"] = c.rerun;
    if (!c.note.empty()) o["note"] = c.note;
    auto& checks = o["checks"] = nlohmann::ordered_json::array();
    for (const auto& k : c.checks) checks.push_back(check_json(k));
    if (c.rerun) {
      auto& first = o["first_attempt"] = nlohmann::ordered_json::array();
      for (const auto& k : c.first_attempt) first.push_back(check_json(k));
    }
    if (include_timing) o["seconds"] = c.seconds;
    crit.push_back(std::move(o));
  }
  if (include_timing) j["wall_time"] = r.wall_time;
  return j.dump(2) + "\n";
}

}  // namespace lipmin
