#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "micky/rng.hpp"

namespace micky {

// Per-arm pull bookkeeping. Rewards live in [0, 1].
struct ArmStats {
  std::int64_t pulls = 0;
  double reward_sum = 0.0;

  double mean() const { return reward_sum / static_cast<double>(pulls); }
};

enum class PolicyKind { kEpsilonGreedy, kSoftmax, kUcb1 };

const char* to_string(PolicyKind kind);
PolicyKind policy_from_string(const std::string& label);

// Selection policy plus its parameter, when it has one. epsilon applies to
// epsilon-greedy, temperature to softmax; UCB1 has no parameters.
struct PolicySpec {
  PolicyKind kind = PolicyKind::kUcb1;
  double epsilon = 0.1;
  double temperature = 0.1;

  void validate() const;
};

// Credits a reward to one arm. Throws std::invalid_argument outside [0, 1].
void update(std::span<ArmStats> arms, std::size_t arm, double reward);

// Every policy plays unpulled arms first, lowest index first, so the score
// formulas below never see pulls == 0.
std::size_t select_epsilon_greedy(std::span<const ArmStats> arms, double epsilon, Rng& rng);

// Samples arm i with probability exp(mean_i/T) / sum_j exp(mean_j/T),
// computed with max-subtraction.
std::size_t select_softmax(std::span<const ArmStats> arms, double temperature, Rng& rng);

// Deterministic argmax of mean_i + sqrt(2 ln(total_pulls) / pulls_i),
// ties broken by lowest index.
std::size_t select_ucb1(std::span<const ArmStats> arms, std::int64_t total_pulls);

std::size_t select(std::span<const ArmStats> arms, const PolicySpec& policy,
                   std::int64_t total_pulls, Rng& rng);

}  // namespace micky
