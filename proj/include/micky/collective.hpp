#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "micky/bandit.hpp"
#include "micky/outcome.hpp"
#include "micky/perf_matrix.hpp"

namespace micky {

// Measurement budget of a collective run: alpha exhaustive sweeps over the
// configs in phase 1, then ceil(beta * |W|) policy-driven pulls in phase 2.
struct Budget {
  int alpha = 1;
  double beta = 0.5;

  void validate() const;
  std::int64_t total_pulls(std::size_t n_configs, std::size_t n_workloads) const;
};

// How pull rewards are normalized. Online divides by the best objective
// seen so far for the pulled workload (all an optimizer can know mid-run);
// oracle divides by the workload's true optimum from the full matrix and
// exists for analysis.
enum class RewardMode { kOnline, kOracle };

const char* to_string(RewardMode mode);
RewardMode reward_mode_from_string(const std::string& label);

// Reward of one pull given the running best (minimum, already including
// this observation) for the same workload. In (0, 1]; 1.0 when the pull is
// the best seen.
double reward(double observed, double best_observed_for_w);

// Two-phase collective search over the shared arm set. Phase 1 sweeps every
// config alpha times against randomly drawn workloads; phase 2 lets the
// bandit policy pick configs for ceil(beta*|W|) more pulls. Returns the arm
// with the highest mean reward as the exemplar for the whole group.
RunOutcome run_micky(const PerfMatrix& matrix, const PolicySpec& policy, const Budget& budget,
                     RewardMode reward_mode, std::uint64_t seed);

// Index of the highest-mean arm among those pulled at least once, ties by
// lowest index. Throws std::invalid_argument when no arm was pulled.
std::size_t exemplar_of(std::span<const ArmStats> arms);

}  // namespace micky
