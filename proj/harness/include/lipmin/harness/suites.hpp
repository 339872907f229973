#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lipmin/harness/report.hpp"

namespace lipmin {

/// Replicate counts below are the full-scale values; run_suite multiplies them
/// by n / 10^4.
inline constexpr double kReferenceN = 1e4;

struct Criterion {
  int id;
  std::string title;
  std::string suite;  ///< minorant, laws, samplers, straddle or azema
  bool stochastic;    ///< eligible for the automatic rerun
  bool slow;
  std::function<std::vector<CheckRecord>(double scale, std::uint64_t seed, std::string& note)> run;
};

const std::vector<Criterion>& acceptance_criteria();
const Criterion& criterion_by_id(int id);

/// Runs one criterion. A failing stochastic criterion is rerun once on a seed
/// derived with splitmix64 and passes iff the rerun passes; both attempts are kept.
CriterionOutcome run_criterion(const Criterion& c, std::size_t n, std::uint64_t seed);

/// Suite names: minorant, laws, samplers, straddle, azema, all.
bool is_suite_name(std::string_view name);

struct SuiteOptions {
  std::set<int> only;  ///< when nonempty, run just these ids (intersected with the suite)
  std::set<int> skip;
  std::function<void(const CriterionOutcome&)> on_done;
};

/// Throws std::invalid_argument for an unknown suite name.
Report run_suite(std::string_view name, std::size_t n, std::uint64_t seed,
                 const SuiteOptions& opt = {});

}  // namespace lipmin
