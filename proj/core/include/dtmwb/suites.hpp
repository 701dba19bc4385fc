#pragma once

#include <string>
#include <vector>

#include "dtmwb/decompositions.hpp"
#include "dtmwb/report.hpp"

namespace dtmwb {

/// nutil, propdec, proper, order, modularity, structure.
const std::vector<std::string>& suite_names();

struct SuiteConfig {
  SpacePtr space;
  std::vector<std::string> instances;
  std::vector<std::string> suites;
  DecomposeOptions options;
  unsigned threads = 1;
  bool timing = false;
};

/// Rows of one (suite, instance) task. The seed is derived from the base
/// seed, the suite and the instance, so results do not depend on scheduling.
std::vector<ReportRow> run_suite(const SpacePtr& space, const std::string& suite, const std::string& instance,
                                 const DecomposeOptions& base);

/// Every suite on every instance, rows in config order (instances outer).
std::vector<ReportRow> run_suites(const SuiteConfig& config);

}  // namespace dtmwb
