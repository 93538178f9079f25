#pragma once

#include <string>

#include "stolev/config.hpp"
#include "stolev/report.hpp"

namespace stolev {

struct RunOutcome {
  report::RunManifest manifest;
  bool verdict_pass = true;
  std::string summary;
};

// Executes the configured experiment, writes CSV results, a text report and
// a manifest into the output directory. Deterministic in (config,
// master_seed) regardless of worker count.
RunOutcome run_experiment(const ExperimentConfig& config);

}  // namespace stolev
