#include "micky/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "micky/json_io.hpp"
#include "micky/rng.hpp"

namespace micky {

namespace {

const char* kFamilyLetters[] = {"c", "r", "m"};
const InstanceFamily kFamilies[] = {InstanceFamily::kCompute, InstanceFamily::kMemory,
                                    InstanceFamily::kGeneral};
const char* kSizeTiers[] = {"large", "xlarge", "2xlarge"};

// EC2-flavored catalog: families cycle c/r/m, sizes large..2xlarge with
// doubling cores, per-family memory-per-core and price points.
std::vector<CloudConfig> make_configs(int n_configs, Rng& rng) {
  std::vector<CloudConfig> configs;
  configs.reserve(n_configs);
  for (int i = 0; i < n_configs; ++i) {
    const int family = i % 3;
    const int size = (i / 3) % 3;
    const int generation = i / 9;
    CloudConfig c;
    c.id = std::string(kFamilyLetters[family]) + std::to_string(3 + generation) + "." +
           kSizeTiers[size];
    c.family = kFamilies[family];
    c.size_tier = kSizeTiers[size];
    c.vcpus = 2 << size;  // 2, 4, 8
    const double mem_per_core = family == 0 ? 2.0 : (family == 1 ? 8.0 : 4.0);
    c.mem_gb = mem_per_core * c.vcpus;
    const double price_per_core = family == 0 ? 0.05 : (family == 1 ? 0.066 : 0.05);
    c.price_per_hour = price_per_core * c.vcpus * rng.uniform_range(0.85, 1.4);
    c.price_per_hour = std::round(c.price_per_hour * 1000.0) / 1000.0;
    c.ebs_mbps = size == 2 ? 1000.0 : (size == 1 ? 750.0 : 500.0);
    configs.push_back(std::move(c));
  }
  return configs;
}

double cost_time_divergence(const PerfMatrix& time_matrix, const PerfMatrix& cost_matrix) {
  std::size_t diverged = 0;
  for (std::size_t w = 0; w < time_matrix.n_workloads(); ++w) {
    if (time_matrix.best_config(w) != cost_matrix.best_config(w)) ++diverged;
  }
  return static_cast<double>(diverged) / static_cast<double>(time_matrix.n_workloads());
}

}  // namespace

void SynthSpec::validate() const {
  if (n_workloads < 1) throw std::invalid_argument("n_workloads must be >= 1");
  if (n_configs < 2) throw std::invalid_argument("n_configs must be >= 2");
  if (!(exemplar_fraction > 0.0 && exemplar_fraction <= 1.0)) {
    throw std::invalid_argument("exemplar_fraction must be in (0, 1]");
  }
  if (near_band < 0) throw std::invalid_argument("near_band must be >= 0");
  if (!(penalty_scale > 0)) throw std::invalid_argument("penalty_scale must be > 0");
  if (!(base_time_min > 0) || !(base_time_min < base_time_max)) {
    throw std::invalid_argument("base time range must satisfy 0 < min < max");
  }
}

SynthResult gen_matrix(const SynthSpec& spec, ObjectiveKind kind) {
  spec.validate();
  const auto n_w = static_cast<std::size_t>(spec.n_workloads);
  const auto n_s = static_cast<std::size_t>(spec.n_configs);

  Rng rng(spec.seed);
  std::vector<CloudConfig> configs;
  std::vector<double> elapsed(n_w * n_s);

  // Prices are redrawn until the two objectives disagree on the optimum for
  // at least 30% of workloads, so both objective kinds get exercised.
  const std::size_t exemplar = rng.uniform_index(n_s);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rng config_rng = rng.child(1000 + attempt);
    configs = make_configs(spec.n_configs, config_rng);

    Rng cell_rng = rng.child(1);
    // Exactly round(p * |W|) workloads get the exemplar inside the band, so
    // fraction_within(exemplar, 1 + near_band) equals p up to rounding.
    const auto n_near =
        static_cast<std::size_t>(std::floor(spec.exemplar_fraction * n_w + 0.5));
    std::vector<bool> near(n_w);
    {
      std::vector<std::size_t> order(n_w);
      for (std::size_t w = 0; w < n_w; ++w) order[w] = w;
      cell_rng.shuffle(order);
      for (std::size_t i = 0; i < std::min(n_near, n_w); ++i) near[order[i]] = true;
    }
    for (std::size_t w = 0; w < n_w; ++w) {
      const double optimum = cell_rng.uniform_range(spec.base_time_min, spec.base_time_max);
      double* row = &elapsed[w * n_s];
      for (std::size_t s = 0; s < n_s; ++s) {
        row[s] = optimum * (1.0 + cell_rng.exponential());
      }
      if (near[w]) {
        // Near-optimal case: the exemplar lands inside the band, and the
        // optimum itself sits on the exemplar with a band-proportional
        // chance, otherwise on some other config.
        row[exemplar] = optimum * (1.0 + cell_rng.uniform_range(0.0, spec.near_band));
        const bool exemplar_holds =
            cell_rng.uniform_real() < std::min(spec.near_band, 1.0);
        if (exemplar_holds) {
          row[exemplar] = optimum;
        } else {
          std::size_t holder = cell_rng.uniform_index(n_s - 1);
          if (holder >= exemplar) ++holder;
          row[holder] = optimum;
        }
      } else {
        // Off case: strictly outside the band, so the planted in-band count
        // is exact.
        row[exemplar] =
            optimum * (1.0 + spec.near_band + spec.penalty_scale * cell_rng.exponential());
        std::size_t holder = cell_rng.uniform_index(n_s - 1);
        if (holder >= exemplar) ++holder;
        row[holder] = optimum;
      }
    }

    std::vector<std::string> workloads(n_w);
    for (std::size_t w = 0; w < n_w; ++w) {
      workloads[w] = "w" + std::string(w < 10 ? "00" : (w < 100 ? "0" : "")) + std::to_string(w);
    }
    PerfMatrix time_matrix(workloads, configs, elapsed, ObjectiveKind::kExecutionTime);
    PerfMatrix cost_matrix(workloads, configs, elapsed, ObjectiveKind::kOperationalCost);
    if (n_w < 5 || cost_time_divergence(time_matrix, cost_matrix) >= 0.30 ||
        attempt == 63) {
      return {kind == ObjectiveKind::kExecutionTime ? std::move(time_matrix)
                                                    : std::move(cost_matrix),
              configs[exemplar].id};
    }
  }
  throw std::runtime_error("gen_matrix: unreachable");
}

std::string write_dataset(const SynthSpec& spec, const std::string& out_dir) {
  SynthResult result = gen_matrix(spec);
  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);
  {
    std::ofstream out(dir / "configs.csv");
    if (!out) throw DataError("cannot write " + (dir / "configs.csv").string());
    write_configs_csv(out, result.matrix.configs());
  }
  {
    std::ofstream out(dir / "measurements.csv");
    if (!out) throw DataError("cannot write " + (dir / "measurements.csv").string());
    write_measurements_csv(out, result.matrix);
  }
  {
    std::ofstream out(dir / "truth.json");
    if (!out) throw DataError("cannot write " + (dir / "truth.json").string());
    out << dump_json(truth_json(spec, result.planted_exemplar));
  }
  return result.planted_exemplar;
}

}  // namespace micky
