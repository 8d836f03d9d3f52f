#pragma once

#include <cstdint>
#include <string>

#include "micky/perf_matrix.hpp"

namespace micky {

// Parameters of the planted-exemplar generator. One config is designated
// the exemplar; it lands within (1 + near_band) of the per-workload optimum
// with probability exemplar_fraction and takes an exponential penalty of
// scale penalty_scale otherwise. Remaining configs take unit-scale
// exponential penalties.
struct SynthSpec {
  int n_workloads = 40;
  int n_configs = 10;
  double exemplar_fraction = 0.8;  // p
  double near_band = 0.1;          // delta
  double penalty_scale = 0.2;
  double base_time_min = 60.0;   // seconds
  double base_time_max = 3600.0;
  std::uint64_t seed = 42;

  void validate() const;
};

struct SynthResult {
  PerfMatrix matrix;
  std::string planted_exemplar;
};

// Deterministic in the spec (including the seed). The elapsed-time table
// carries the planted structure; prices are drawn so the operational-cost
// optimum disagrees with the execution-time optimum on a good share of
// workloads.
SynthResult gen_matrix(const SynthSpec& spec,
                       ObjectiveKind kind = ObjectiveKind::kExecutionTime);

// Writes configs.csv, measurements.csv and truth.json into out_dir.
// Returns the planted exemplar id.
std::string write_dataset(const SynthSpec& spec, const std::string& out_dir);

}  // namespace micky
