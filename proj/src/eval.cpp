#include "micky/eval.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "micky/rng.hpp"

namespace micky {

MethodSpec MethodSpec::parse(const std::string& name) {
  MethodSpec spec;
  spec.name = name;
  if (name == "micky") {
    spec.kind = MethodKind::kMicky;
  } else if (name == "cherrypick") {
    spec.kind = MethodKind::kCherrypick;
  } else if (name == "brute") {
    spec.kind = MethodKind::kBrute;
  } else if (name.rfind("random", 0) == 0 && name.size() > 6) {
    int k = 0;
    const char* begin = name.data() + 6;
    const char* end = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(begin, end, k);
    if (ec != std::errc{} || ptr != end || k < 1) {
      throw std::invalid_argument("unknown method: '" + name + "'");
    }
    spec.kind = MethodKind::kRandomK;
    spec.k = k;
  } else {
    throw std::invalid_argument("unknown method: '" + name + "'");
  }
  return spec;
}

ReplicationResult run_replication(const PerfMatrix& matrix, const MethodSpec& method,
                                  std::uint64_t seed) {
  ReplicationResult result;
  const std::size_t n_w = matrix.n_workloads();
  result.np_per_workload.resize(n_w);

  if (method.kind == MethodKind::kMicky) {
    RunOutcome outcome =
        run_micky(matrix, method.policy, method.budget, method.reward_mode, seed);
    const std::size_t s = matrix.config_index(outcome.exemplar);
    for (std::size_t w = 0; w < n_w; ++w) {
      result.np_per_workload[w] = matrix.normalized_performance(w, s);
    }
    result.total_cost = outcome.cost;
    result.exemplar = outcome.exemplar;
    result.runs.push_back(std::move(outcome));
    return result;
  }

  // Per-workload methods: one independent sub-run per workload, with a
  // seed derived from (replication seed, workload index).
  result.runs.reserve(n_w);
  for (std::size_t w = 0; w < n_w; ++w) {
    const std::uint64_t sub_seed = Rng::mix(seed, w);
    RunOutcome outcome;
    switch (method.kind) {
      case MethodKind::kCherrypick:
        outcome = run_cherrypick(matrix, w, sub_seed, method.n_init, method.ei_stop);
        break;
      case MethodKind::kRandomK:
        outcome = run_random_k(matrix, w, method.k, sub_seed);
        break;
      case MethodKind::kBrute:
        outcome = run_brute(matrix, w);
        break;
      case MethodKind::kMicky:
        break;  // handled above
    }
    result.np_per_workload[w] =
        matrix.normalized_performance(w, matrix.config_index(outcome.exemplar));
    result.total_cost += outcome.cost;
    result.runs.push_back(std::move(outcome));
  }
  return result;
}

double quantile(std::vector<double> samples, double q) {
  if (samples.empty()) throw std::invalid_argument("quantile: no samples");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q outside [0, 1]");
  std::sort(samples.begin(), samples.end());
  const double pos = q * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= samples.size()) return samples.back();
  const double frac = pos - static_cast<double>(lo);
  return samples[lo] + frac * (samples[lo + 1] - samples[lo]);
}

ExperimentReport replicate(const PerfMatrix& matrix, const MethodSpec& method, int n_reps,
                           std::uint64_t base_seed, int threads) {
  if (n_reps < 1) throw std::invalid_argument("replicate: n_reps must be >= 1");
  if (threads < 1) threads = 1;

  std::vector<ReplicationResult> results(n_reps);
  const auto worker_count = static_cast<std::size_t>(
      std::min<int>(threads, n_reps));
  if (worker_count <= 1) {
    for (int i = 0; i < n_reps; ++i) {
      results[i] = run_replication(matrix, method, base_seed + static_cast<std::uint64_t>(i));
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t t = 0; t < worker_count; ++t) {
      workers.emplace_back([&] {
        for (int i = next.fetch_add(1); i < n_reps; i = next.fetch_add(1)) {
          results[i] =
              run_replication(matrix, method, base_seed + static_cast<std::uint64_t>(i));
        }
      });
    }
    for (std::thread& w : workers) w.join();
  }

  // Single-threaded reduce in replication order; output is independent of
  // the degree of parallelism above.
  ExperimentReport report;
  report.method = method.name;
  report.replications = n_reps;
  std::vector<double> np_samples;
  std::vector<double> costs;
  np_samples.reserve(static_cast<std::size_t>(n_reps) * matrix.n_workloads());
  costs.reserve(n_reps);
  for (int i = 0; i < n_reps; ++i) {
    const ReplicationResult& r = results[i];
    for (std::size_t w = 0; w < matrix.n_workloads(); ++w) {
      np_samples.push_back(r.np_per_workload[w]);
      report.samples.push_back({i, matrix.workloads()[w], r.np_per_workload[w], r.total_cost});
    }
    costs.push_back(static_cast<double>(r.total_cost));
    if (!r.exemplar.empty()) report.exemplar_histogram[r.exemplar] += 1;
  }
  for (double q : kReportQuantiles) {
    report.np_quantiles[q] = quantile(np_samples, q);
  }
  for (double threshold : kReportThresholds) {
    std::size_t within = 0;
    for (double np : np_samples) {
      if (np <= threshold) ++within;
    }
    report.threshold_fractions[threshold] =
        static_cast<double>(within) / static_cast<double>(np_samples.size());
  }
  report.cost_min = static_cast<std::int64_t>(*std::min_element(costs.begin(), costs.end()));
  report.cost_max = static_cast<std::int64_t>(*std::max_element(costs.begin(), costs.end()));
  report.cost_median = quantile(costs, 0.5);
  return report;
}

std::vector<CostCurveRow> cost_curve(const PerfMatrix& matrix,
                                     const std::vector<std::size_t>& workload_counts,
                                     const std::vector<MethodSpec>& methods,
                                     const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("cost_curve: no seeds");
  std::vector<CostCurveRow> rows;
  for (std::size_t count : workload_counts) {
    if (count < 1 || count > matrix.n_workloads()) {
      throw std::invalid_argument("cost_curve: workload count out of range");
    }
    for (const MethodSpec& method : methods) {
      std::vector<double> costs;
      costs.reserve(seeds.size());
      for (std::uint64_t seed : seeds) {
        // Subset choice depends on (seed, count) only, not on the method,
        // so methods are compared on identical workload groups.
        Rng subset_rng(Rng::mix(seed, count));
        std::vector<std::size_t> all(matrix.n_workloads());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        subset_rng.shuffle(all);
        all.resize(count);
        std::sort(all.begin(), all.end());
        const PerfMatrix sub = matrix.subset(all);
        costs.push_back(
            static_cast<double>(run_replication(sub, method, seed).total_cost));
      }
      rows.push_back({count, method.name, quantile(costs, 0.5)});
    }
  }
  return rows;
}

void KneeInputs::validate() const {
  if (delta_p < 0) throw std::invalid_argument("delta_p must be >= 0");
  if (savings < 0) throw std::invalid_argument("savings must be >= 0");
  if (!(cp_over_cm > 0)) throw std::invalid_argument("cp_over_cm must be > 0");
}

std::optional<std::int64_t> knee_point(const KneeInputs& in) {
  in.validate();
  if (in.delta_p == 0.0) return std::nullopt;  // collective optimizer never loses
  const double k = in.savings / (in.cp_over_cm * in.delta_p);
  return static_cast<std::int64_t>(std::ceil(k - 1e-12));
}

}  // namespace micky
