#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "micky/baselines.hpp"
#include "micky/collective.hpp"
#include "micky/outcome.hpp"
#include "micky/perf_matrix.hpp"

namespace micky {

enum class MethodKind { kMicky, kCherrypick, kRandomK, kBrute };

// One optimizer roster entry with everything needed to run it.
struct MethodSpec {
  MethodKind kind = MethodKind::kMicky;
  std::string name = "micky";
  // collective
  PolicySpec policy{};
  Budget budget{};
  RewardMode reward_mode = RewardMode::kOnline;
  // cherrypick
  int n_init = 3;
  double ei_stop = 0.10;
  // random-k
  int k = 4;

  // Accepts micky | cherrypick | random<k> | brute.
  static MethodSpec parse(const std::string& name);
};

// Runs one replication. Collective methods produce a single outcome;
// per-workload methods produce one outcome per workload and the returned
// aggregate carries the summed cost.
struct ReplicationResult {
  std::vector<RunOutcome> runs;           // size 1 for collective methods
  std::vector<double> np_per_workload;    // NP(w, chosen) in workload order
  std::int64_t total_cost = 0;
  std::string exemplar;  // collective methods only
};

ReplicationResult run_replication(const PerfMatrix& matrix, const MethodSpec& method,
                                  std::uint64_t seed);

inline const std::vector<double> kReportQuantiles{0.10, 0.25, 0.50, 0.75, 0.90};
inline const std::vector<double> kReportThresholds{1.1, 1.2, 1.4};

// Aggregated search-performance and cost statistics over replications.
struct ExperimentReport {
  std::string method;
  int replications = 0;
  std::map<double, double> np_quantiles;         // quantile -> NP value
  std::map<double, double> threshold_fractions;  // threshold -> fraction of samples
  std::int64_t cost_min = 0;
  double cost_median = 0.0;
  std::int64_t cost_max = 0;
  std::map<std::string, std::int64_t> exemplar_histogram;  // collective only

  // Raw samples behind the aggregates, kept for the long-format CSV.
  // One NP sample per (replication, workload).
  struct Sample {
    int replication;
    std::string workload;
    double np;
    std::int64_t cost;  // total cost of that replication
  };
  std::vector<Sample> samples;
};

// Linear interpolation between order statistics: on sorted x_0..x_{n-1} the
// q-quantile is x at fractional position (n-1)q.
double quantile(std::vector<double> samples, double q);

// Runs the method n_reps times with seeds base_seed + i. Replications may
// run on several threads; aggregation is ordered by replication index so
// the report does not depend on thread count.
ExperimentReport replicate(const PerfMatrix& matrix, const MethodSpec& method, int n_reps,
                           std::uint64_t base_seed, int threads = 1);

struct CostCurveRow {
  std::size_t n_workloads;
  std::string method;
  double median_total_cost;
};

// Median total measurement cost per (workload count, method) over seeds.
// Workload subsets are drawn deterministically per (seed, count).
std::vector<CostCurveRow> cost_curve(const PerfMatrix& matrix,
                                     const std::vector<std::size_t>& workload_counts,
                                     const std::vector<MethodSpec>& methods,
                                     const std::vector<std::uint64_t>& seeds);

// Knee-point inputs: delta_p is the per-run fractional performance loss of
// the collective optimizer, savings the measurements saved per workload,
// cp_over_cm the ratio of per-run performance cost to measurement cost.
struct KneeInputs {
  double delta_p = 0.05;
  double savings = 3.15;
  double cp_over_cm = 10.0;

  void validate() const;
};

// Smallest recurrence count K at which a per-workload optimizer pays off:
// K = ceil(savings / (cp_over_cm * delta_p)). nullopt means "never":
// with delta_p == 0 the collective optimizer never loses.
std::optional<std::int64_t> knee_point(const KneeInputs& in);

}  // namespace micky
