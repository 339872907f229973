#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipmin/harness/stats.hpp"

namespace lipmin {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr double kPThreshold = 1e-3;

/// One statistical or deterministic comparison.
struct CheckRecord {
  std::string name;
  std::string kind;        ///< "ks", "moment", "bound" or "exact"
  double statistic = 0.0;  ///< KS distance, sample mean, or measured error
  double target = 0.0;
  double tolerance = 0.0;  ///< k·SE for moments, the bound for "bound"/"exact", p threshold for KS
  std::optional<double> p;
  bool pass = false;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

CheckRecord ks_record(std::string name, const stats::KsResult& r, std::size_t n, std::uint64_t seed);
CheckRecord moment_record(std::string name, const stats::MomentResult& r, std::uint64_t seed);
/// Passes iff value <= bound.
CheckRecord bound_record(std::string name, double value, double bound, std::size_t n = 0,
                         std::uint64_t seed = 0, std::string kind = "bound");

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool pass = false;
  bool rerun = false;  ///< first attempt failed and a derived seed was tried
  std::vector<CheckRecord> checks;
  std::vector<CheckRecord> first_attempt;  ///< kept when rerun
  std::string note;
  double seconds = 0.0;
};

struct Report {
  std::string suite;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<CriterionOutcome> criteria;
  bool pass = false;
  double wall_time = 0.0;
};

/// Pretty-printed JSON. The wall time is left out unless asked for, so two runs
/// with the same (suite, n, seed) give byte-identical output.
std::string report_to_json(const Report& r, bool include_timing = false);

}  // namespace lipmin
