#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "micky/gp.hpp"
#include "micky/outcome.hpp"
#include "micky/perf_matrix.hpp"

namespace micky {

// Feature layout: family one-hot (compute, memory, general), then vcpus,
// mem-per-core (GiB) and EBS bandwidth, each min-max normalized over the
// config set. A degenerate range (max == min) encodes as 0.
inline constexpr std::size_t kConfigFeatureDims = 6;

Eigen::VectorXd encode_config(const CloudConfig& config,
                              const std::vector<CloudConfig>& config_set);

// Feature rows for every config in matrix order.
Eigen::MatrixXd encode_config_set(const std::vector<CloudConfig>& config_set);

// Bayesian optimization over configs for a single workload: n_init random
// distinct measurements, then refit a Matern 5/2 GP and measure the
// argmax-EI config until max EI drops below ei_stop * |best observed|.
RunOutcome run_cherrypick(const PerfMatrix& matrix, std::size_t w, std::uint64_t seed,
                          int n_init = 3, double ei_stop = 0.10);

// Measures k distinct configs uniformly at random; returns the best.
RunOutcome run_random_k(const PerfMatrix& matrix, std::size_t w, int k, std::uint64_t seed);

// Measures every config; cost |S|, normalized performance exactly 1.
RunOutcome run_brute(const PerfMatrix& matrix, std::size_t w);

}  // namespace micky
