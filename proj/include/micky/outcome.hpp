#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "micky/perf_matrix.hpp"

namespace micky {

// Final per-config statistics attached to a run result.
struct ArmReport {
  std::string config;
  std::int64_t pulls = 0;
  double mean_reward = 0.0;  // 0 when never pulled
};

// Result of one optimizer run: the chosen config (the exemplar for
// collective runs, the per-workload winner otherwise), the ordered pull
// log, and the measurement cost.
struct RunOutcome {
  std::string method;
  std::optional<std::string> workload;  // set for per-workload optimizers
  std::string exemplar;
  std::int64_t cost = 0;
  PullLog pull_log;
  std::vector<ArmReport> arm_stats;
};

}  // namespace micky
