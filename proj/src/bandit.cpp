#include "micky/bandit.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace micky {

namespace {

std::optional<std::size_t> first_unpulled(std::span<const ArmStats> arms) {
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].pulls == 0) return i;
  }
  return std::nullopt;
}

std::size_t argmax_mean(std::span<const ArmStats> arms) {
  std::size_t best = 0;
  double best_mean = arms[0].mean();
  for (std::size_t i = 1; i < arms.size(); ++i) {
    double m = arms[i].mean();
    if (m > best_mean) {
      best_mean = m;
      best = i;
    }
  }
  return best;
}

}  // namespace

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kEpsilonGreedy: return "epsilon-greedy";
    case PolicyKind::kSoftmax: return "softmax";
    case PolicyKind::kUcb1: return "ucb1";
  }
  return "ucb1";
}

PolicyKind policy_from_string(const std::string& label) {
  if (label == "epsilon-greedy" || label == "egreedy") return PolicyKind::kEpsilonGreedy;
  if (label == "softmax") return PolicyKind::kSoftmax;
  if (label == "ucb1" || label == "ucb") return PolicyKind::kUcb1;
  throw std::invalid_argument("unknown policy: '" + label + "'");
}

void PolicySpec::validate() const {
  if (kind == PolicyKind::kEpsilonGreedy && (epsilon < 0.0 || epsilon > 1.0)) {
    throw std::invalid_argument("epsilon must be in [0, 1]");
  }
  if (kind == PolicyKind::kSoftmax && !(temperature > 0.0)) {
    throw std::invalid_argument("temperature must be > 0");
  }
}

void update(std::span<ArmStats> arms, std::size_t arm, double reward) {
  if (arm >= arms.size()) throw std::invalid_argument("arm index out of range");
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw std::invalid_argument("reward must be in [0, 1]");
  }
  arms[arm].pulls += 1;
  arms[arm].reward_sum += reward;
}

std::size_t select_epsilon_greedy(std::span<const ArmStats> arms, double epsilon, Rng& rng) {
  if (auto unpulled = first_unpulled(arms)) return *unpulled;
  if (rng.uniform_real() < epsilon) return rng.uniform_index(arms.size());
  return argmax_mean(arms);
}

std::size_t select_softmax(std::span<const ArmStats> arms, double temperature, Rng& rng) {
  if (auto unpulled = first_unpulled(arms)) return *unpulled;
  double max_mean = arms[0].mean();
  for (std::size_t i = 1; i < arms.size(); ++i) {
    max_mean = std::max(max_mean, arms[i].mean());
  }
  std::vector<double> weights(arms.size());
  double total = 0.0;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    weights[i] = std::exp((arms[i].mean() - max_mean) / temperature);
    total += weights[i];
  }
  double u = rng.uniform_real() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return arms.size() - 1;  // round-off fallthrough
}

std::size_t select_ucb1(std::span<const ArmStats> arms, std::int64_t total_pulls) {
  if (auto unpulled = first_unpulled(arms)) return *unpulled;
  if (total_pulls < 1) throw std::invalid_argument("total_pulls must be >= 1");
  const double log_total = std::log(static_cast<double>(total_pulls));
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < arms.size(); ++i) {
    double score =
        arms[i].mean() + std::sqrt(2.0 * log_total / static_cast<double>(arms[i].pulls));
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

std::size_t select(std::span<const ArmStats> arms, const PolicySpec& policy,
                   std::int64_t total_pulls, Rng& rng) {
  switch (policy.kind) {
    case PolicyKind::kEpsilonGreedy:
      return select_epsilon_greedy(arms, policy.epsilon, rng);
    case PolicyKind::kSoftmax:
      return select_softmax(arms, policy.temperature, rng);
    case PolicyKind::kUcb1:
      return select_ucb1(arms, total_pulls);
  }
  throw std::invalid_argument("unknown policy kind");
}

}  // namespace micky
