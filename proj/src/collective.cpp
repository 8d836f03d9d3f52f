#include "micky/collective.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace micky {

void Budget::validate() const {
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  if (beta < 0) throw std::invalid_argument("beta must be >= 0");
}

std::int64_t Budget::total_pulls(std::size_t n_configs, std::size_t n_workloads) const {
  // The epsilon guards against ceil(0.3 * 10) = 4 style float noise.
  const double phase2 = beta * static_cast<double>(n_workloads);
  const auto phase2_pulls = static_cast<std::int64_t>(std::ceil(phase2 - 1e-9));
  return static_cast<std::int64_t>(alpha) * static_cast<std::int64_t>(n_configs) + phase2_pulls;
}

const char* to_string(RewardMode mode) {
  return mode == RewardMode::kOnline ? "online" : "oracle";
}

RewardMode reward_mode_from_string(const std::string& label) {
  if (label == "online") return RewardMode::kOnline;
  if (label == "oracle") return RewardMode::kOracle;
  throw std::invalid_argument("unknown reward mode: '" + label + "'");
}

double reward(double observed, double best_observed_for_w) {
  if (!(observed > 0) || !(best_observed_for_w > 0)) {
    throw std::invalid_argument("reward inputs must be > 0");
  }
  return best_observed_for_w / observed;
}

std::size_t exemplar_of(std::span<const ArmStats> arms) {
  std::size_t best = arms.size();
  double best_mean = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].pulls == 0) continue;
    double m = arms[i].mean();
    if (m > best_mean) {
      best_mean = m;
      best = i;
    }
  }
  if (best == arms.size()) throw std::invalid_argument("no arm has been pulled");
  return best;
}

namespace {

// Hands out workloads from a seeded permutation, reshuffling on exhaustion
// so no workload is drawn twice before the whole set cycles.
class WorkloadDeck {
 public:
  WorkloadDeck(std::size_t n_workloads, Rng& rng) : rng_(rng), order_(n_workloads) {
    for (std::size_t i = 0; i < n_workloads; ++i) order_[i] = i;
    reshuffle();
  }

  std::size_t draw() {
    if (next_ == order_.size()) reshuffle();
    return order_[next_++];
  }

  void reshuffle() {
    rng_.shuffle(order_);
    next_ = 0;
  }

 private:
  Rng& rng_;
  std::vector<std::size_t> order_;
  std::size_t next_ = 0;
};

}  // namespace

RunOutcome run_micky(const PerfMatrix& matrix, const PolicySpec& policy, const Budget& budget,
                     RewardMode reward_mode, std::uint64_t seed) {
  policy.validate();
  budget.validate();
  const std::size_t n_configs = matrix.n_configs();
  const std::size_t n_workloads = matrix.n_workloads();
  const std::int64_t planned = budget.total_pulls(n_configs, n_workloads);
  if (planned < 1) throw std::invalid_argument("empty budget: alpha*|S| + ceil(beta*|W|) < 1");

  Rng rng(seed);
  std::vector<ArmStats> arms(n_configs);
  std::vector<double> best_seen(n_workloads, std::numeric_limits<double>::infinity());
  std::vector<double> optima(n_workloads);
  for (std::size_t w = 0; w < n_workloads; ++w) {
    optima[w] = matrix.objective(w, matrix.best_config(w));
  }

  RunOutcome outcome;
  outcome.method = "micky";
  outcome.pull_log.entries.reserve(static_cast<std::size_t>(planned));
  std::int64_t total_pulls = 0;

  auto pull = [&](std::size_t w, std::size_t s) {
    const double value = matrix.objective(w, s);
    best_seen[w] = std::min(best_seen[w], value);
    const double normalizer = reward_mode == RewardMode::kOracle ? optima[w] : best_seen[w];
    const double r = reward(value, normalizer);
    update(arms, s, r);
    ++total_pulls;
    outcome.pull_log.entries.push_back(
        {matrix.workloads()[w], matrix.configs()[s].id, value, r});
  };

  // Phase 1: alpha exhaustive sweeps, configs in index order, each pull on a
  // workload drawn without replacement within the round.
  for (int round = 0; round < budget.alpha; ++round) {
    WorkloadDeck deck(n_workloads, rng);
    for (std::size_t s = 0; s < n_configs; ++s) {
      pull(deck.draw(), s);
    }
  }

  // Phase 2: policy-driven pulls over a fresh workload permutation.
  const std::int64_t phase2 = planned - static_cast<std::int64_t>(budget.alpha) *
                                            static_cast<std::int64_t>(n_configs);
  if (phase2 > 0) {
    WorkloadDeck deck(n_workloads, rng);
    for (std::int64_t i = 0; i < phase2; ++i) {
      const std::size_t w = deck.draw();
      const std::size_t s = select(arms, policy, total_pulls, rng);
      pull(w, s);
    }
  }

  outcome.cost = total_pulls;
  outcome.exemplar = matrix.configs()[exemplar_of(arms)].id;
  outcome.arm_stats.reserve(n_configs);
  for (std::size_t s = 0; s < n_configs; ++s) {
    outcome.arm_stats.push_back({matrix.configs()[s].id, arms[s].pulls,
                                 arms[s].pulls > 0 ? arms[s].mean() : 0.0});
  }
  return outcome;
}

}  // namespace micky
