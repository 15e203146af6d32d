#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmcalc/bayes.hpp"

namespace dmcalc {

struct VerifyOptions {
  std::uint64_t seed = 7;
  int trials = 100;
  int dim_min = 2;
  int dim_max = 6;
};

struct RuleResult {
  std::string id;
  bool pass;
  int trials;
  double max_err;
  double tolerance;
  std::string note;
};

/// Suite names accepted by run_suite: OP, KP, PT, MJ, CP, MC, TP, BR, bounds.
const std::vector<std::string>& suite_names();

/// Runs every rule of one suite; each rule draws its instances from a
/// dedicated generator seeded from (options.seed, rule id), so results do not
/// depend on rule order or on other suites.
std::vector<RuleResult> run_suite(const std::string& suite, const VerifyOptions& options);

std::vector<RuleResult> run_all_suites(const VerifyOptions& options);

} // namespace dmcalc
