#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace micky {

// Raised for malformed or inconsistent input data (bad CSV, incomplete
// matrix, unknown ids). The CLI maps it to exit code 1.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

enum class InstanceFamily { kCompute, kMemory, kGeneral };

const char* to_string(InstanceFamily family);
InstanceFamily family_from_string(const std::string& label);

// One VM type: the unit of choice, an "arm" in the bandit formulation.
struct CloudConfig {
  std::string id;
  InstanceFamily family = InstanceFamily::kGeneral;
  std::string size_tier;
  int vcpus = 1;
  double mem_gb = 1.0;
  double price_per_hour = 1.0;  // USD/h
  double ebs_mbps = 0.0;        // 0 when unknown

  void validate() const;
};

enum class ObjectiveKind { kExecutionTime, kOperationalCost };

const char* to_string(ObjectiveKind kind);
ObjectiveKind objective_from_string(const std::string& label);

// Complete workload x configuration table of elapsed times. Acts as the
// simulation oracle: it can answer any (workload, config) measurement.
// Immutable after construction; safe to share across concurrent runs.
class PerfMatrix {
 public:
  PerfMatrix(std::vector<std::string> workloads, std::vector<CloudConfig> configs,
             std::vector<double> elapsed_seconds, ObjectiveKind kind);

  std::size_t n_workloads() const { return workloads_.size(); }
  std::size_t n_configs() const { return configs_.size(); }
  const std::vector<std::string>& workloads() const { return workloads_; }
  const std::vector<CloudConfig>& configs() const { return configs_; }
  ObjectiveKind objective_kind() const { return kind_; }

  std::size_t workload_index(const std::string& id) const;
  std::size_t config_index(const std::string& id) const;

  double elapsed_seconds(std::size_t w, std::size_t s) const {
    return elapsed_[w * configs_.size() + s];
  }

  // Objective value: elapsed seconds, or elapsed * price / 3600 (USD).
  double objective(std::size_t w, std::size_t s) const;
  double objective(const std::string& w, const std::string& s) const;

  // Objective divided by the per-workload optimum; 1.0 at the optimum.
  double normalized_performance(std::size_t w, std::size_t s) const;
  double normalized_performance(const std::string& w, const std::string& s) const;

  // Argmin of objective over configs, ties broken by lowest config index.
  std::size_t best_config(std::size_t w) const { return row_argmin_[w]; }
  const std::string& best_config(const std::string& w) const;

  // Fraction of workloads whose normalized performance on s is <= threshold.
  double fraction_within(std::size_t s, double threshold) const;
  double fraction_within(const std::string& s, double threshold) const;

  // Same elapsed data restricted to a subset of workloads (indices into
  // this matrix's workload order).
  PerfMatrix subset(const std::vector<std::size_t>& workload_indices) const;

 private:
  std::vector<std::string> workloads_;
  std::vector<CloudConfig> configs_;
  std::vector<double> elapsed_;  // row-major |W| x |S|
  ObjectiveKind kind_;
  std::unordered_map<std::string, std::size_t> workload_by_id_;
  std::unordered_map<std::string, std::size_t> config_by_id_;
  std::vector<double> row_min_;         // per-workload optimal objective
  std::vector<std::size_t> row_argmin_;
};

// One measurement taken by an optimizer.
struct PullEntry {
  std::string workload;
  std::string config;
  double value = 0.0;   // observed objective
  double reward = 0.0;  // bandit reward credited for the pull
};

// Ordered measurement history of one run; cost is the pull count.
struct PullLog {
  std::vector<PullEntry> entries;

  std::int64_t cost() const { return static_cast<std::int64_t>(entries.size()); }
};

// Parses the two CSV tables (schemas in the README) and joins config
// metadata by id. The matrix must be complete: every (workload, config)
// pair exactly once, all values positive.
PerfMatrix load_matrix(std::istream& configs_csv, std::istream& measurements_csv,
                       ObjectiveKind kind);
PerfMatrix load_matrix_files(const std::string& configs_path,
                             const std::string& measurements_path, ObjectiveKind kind);

void write_configs_csv(std::ostream& out, const std::vector<CloudConfig>& configs);
void write_measurements_csv(std::ostream& out, const PerfMatrix& matrix);

}  // namespace micky
