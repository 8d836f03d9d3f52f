#include "micky/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "micky/collective.hpp"
#include "micky/rng.hpp"

namespace micky {

namespace {

double min_max(double v, double lo, double hi) {
  if (hi - lo <= 0.0) return 0.0;
  return (v - lo) / (hi - lo);
}

// Tracks one per-workload search: measurements, running best, pull log.
struct WorkloadSearch {
  const PerfMatrix& matrix;
  std::size_t w;
  RunOutcome outcome;
  std::vector<bool> evaluated;
  std::vector<double> observed;
  double best_value = std::numeric_limits<double>::infinity();

  WorkloadSearch(const PerfMatrix& m, std::size_t workload, std::string method)
      : matrix(m),
        w(workload),
        evaluated(m.n_configs(), false),
        observed(m.n_configs(), 0.0) {
    outcome.method = std::move(method);
    outcome.workload = m.workloads()[w];
  }

  double measure(std::size_t s) {
    const double value = matrix.objective(w, s);
    evaluated[s] = true;
    observed[s] = value;
    best_value = std::min(best_value, value);
    outcome.pull_log.entries.push_back(
        {matrix.workloads()[w], matrix.configs()[s].id, value, reward(value, best_value)});
    return value;
  }

  // Best config of the evaluated pool, ties by lowest config index.
  std::size_t chosen() const {
    std::size_t best = matrix.n_configs();
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < matrix.n_configs(); ++s) {
      if (evaluated[s] && observed[s] < best_val) {
        best_val = observed[s];
        best = s;
      }
    }
    return best;
  }

  RunOutcome finish() {
    outcome.exemplar = matrix.configs()[chosen()].id;
    outcome.cost = outcome.pull_log.cost();
    outcome.arm_stats.reserve(matrix.n_configs());
    for (std::size_t s = 0; s < matrix.n_configs(); ++s) {
      double r = 0.0;
      if (evaluated[s]) {
        // One pull per config; its reward is best-so-far at pull time.
        for (const PullEntry& e : outcome.pull_log.entries) {
          if (e.config == matrix.configs()[s].id) r = e.reward;
        }
      }
      outcome.arm_stats.push_back({matrix.configs()[s].id, evaluated[s] ? 1 : 0, r});
    }
    return std::move(outcome);
  }
};

std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  // Partial Fisher-Yates: first k entries are the sample.
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + rng.uniform_index(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

Eigen::VectorXd encode_config(const CloudConfig& config,
                              const std::vector<CloudConfig>& config_set) {
  if (config_set.size() < 2) {
    throw std::invalid_argument("encode_config: need at least two configs");
  }
  double vcpus_lo = std::numeric_limits<double>::infinity(), vcpus_hi = -vcpus_lo;
  double mpc_lo = vcpus_lo, mpc_hi = -vcpus_lo;
  double ebs_lo = vcpus_lo, ebs_hi = -vcpus_lo;
  for (const CloudConfig& c : config_set) {
    const double mpc = c.mem_gb / c.vcpus;
    vcpus_lo = std::min(vcpus_lo, static_cast<double>(c.vcpus));
    vcpus_hi = std::max(vcpus_hi, static_cast<double>(c.vcpus));
    mpc_lo = std::min(mpc_lo, mpc);
    mpc_hi = std::max(mpc_hi, mpc);
    ebs_lo = std::min(ebs_lo, c.ebs_mbps);
    ebs_hi = std::max(ebs_hi, c.ebs_mbps);
  }
  Eigen::VectorXd f = Eigen::VectorXd::Zero(kConfigFeatureDims);
  switch (config.family) {
    case InstanceFamily::kCompute: f[0] = 1.0; break;
    case InstanceFamily::kMemory: f[1] = 1.0; break;
    case InstanceFamily::kGeneral: f[2] = 1.0; break;
  }
  f[3] = min_max(config.vcpus, vcpus_lo, vcpus_hi);
  f[4] = min_max(config.mem_gb / config.vcpus, mpc_lo, mpc_hi);
  f[5] = min_max(config.ebs_mbps, ebs_lo, ebs_hi);
  return f;
}

Eigen::MatrixXd encode_config_set(const std::vector<CloudConfig>& config_set) {
  Eigen::MatrixXd X(config_set.size(), kConfigFeatureDims);
  for (std::size_t i = 0; i < config_set.size(); ++i) {
    X.row(i) = encode_config(config_set[i], config_set);
  }
  return X;
}

RunOutcome run_cherrypick(const PerfMatrix& matrix, std::size_t w, std::uint64_t seed,
                          int n_init, double ei_stop) {
  const std::size_t n = matrix.n_configs();
  if (n_init < 1 || static_cast<std::size_t>(n_init) > n) {
    throw std::invalid_argument("run_cherrypick: n_init out of range");
  }
  if (ei_stop < 0) throw std::invalid_argument("run_cherrypick: ei_stop must be >= 0");

  Rng rng(seed);
  WorkloadSearch search(matrix, w, "cherrypick");
  const Eigen::MatrixXd features = encode_config_set(matrix.configs());

  for (std::size_t s : sample_distinct(n, static_cast<std::size_t>(n_init), rng)) {
    search.measure(s);
  }

  while (true) {
    std::vector<std::size_t> pool;  // evaluated configs, matrix order
    for (std::size_t s = 0; s < n; ++s) {
      if (search.evaluated[s]) pool.push_back(s);
    }
    if (pool.size() == n) break;

    Eigen::MatrixXd X(pool.size(), kConfigFeatureDims);
    Eigen::VectorXd y(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      X.row(i) = features.row(pool[i]);
      y[i] = search.observed[pool[i]];
    }
    const GpModel model = fit_grid(X, y);

    double max_ei = -1.0;
    std::size_t next = n;
    for (std::size_t s = 0; s < n; ++s) {
      if (search.evaluated[s]) continue;
      const GpPrediction p = model.predict(features.row(s));
      const double ei = expected_improvement(p.mean, p.std, search.best_value);
      if (ei > max_ei) {
        max_ei = ei;
        next = s;
      }
    }
    if (max_ei < ei_stop * std::abs(search.best_value)) break;
    search.measure(next);
  }
  return search.finish();
}

RunOutcome run_random_k(const PerfMatrix& matrix, std::size_t w, int k, std::uint64_t seed) {
  const std::size_t n = matrix.n_configs();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("run_random_k: k out of range");
  }
  Rng rng(seed);
  WorkloadSearch search(matrix, w, "random" + std::to_string(k));
  for (std::size_t s : sample_distinct(n, static_cast<std::size_t>(k), rng)) {
    search.measure(s);
  }
  return search.finish();
}

RunOutcome run_brute(const PerfMatrix& matrix, std::size_t w) {
  WorkloadSearch search(matrix, w, "brute");
  for (std::size_t s = 0; s < matrix.n_configs(); ++s) {
    search.measure(s);
  }
  return search.finish();
}

}  // namespace micky
