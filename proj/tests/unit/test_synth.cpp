#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "micky/json_io.hpp"
#include "micky/rng.hpp"
#include "micky/synth.hpp"

using namespace micky;

TEST_CASE("spec validation") {
  SynthSpec spec;
  spec.exemplar_fraction = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = SynthSpec{};
  spec.n_configs = 1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = SynthSpec{};
  spec.base_time_min = 100.0;
  spec.base_time_max = 100.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  CHECK_NOTHROW(SynthSpec{}.validate());
}

TEST_CASE("identical specs generate identical tables") {
  SynthSpec spec;
  spec.n_workloads = 15;
  spec.n_configs = 7;
  spec.seed = 123;
  SynthResult a = gen_matrix(spec);
  SynthResult b = gen_matrix(spec);
  CHECK(a.planted_exemplar == b.planted_exemplar);
  std::ostringstream csv_a, csv_b;
  write_measurements_csv(csv_a, a.matrix);
  write_measurements_csv(csv_b, b.matrix);
  CHECK(csv_a.str() == csv_b.str());
  std::ostringstream cfg_a, cfg_b;
  write_configs_csv(cfg_a, a.matrix.configs());
  write_configs_csv(cfg_b, b.matrix.configs());
  CHECK(cfg_a.str() == cfg_b.str());

  spec.seed = 124;
  std::ostringstream csv_c;
  write_measurements_csv(csv_c, gen_matrix(spec).matrix);
  CHECK(csv_a.str() != csv_c.str());
}

TEST_CASE("p = 1 with zero band plants an everywhere-optimal exemplar") {
  SynthSpec spec;
  spec.n_workloads = 25;
  spec.n_configs = 6;
  spec.exemplar_fraction = 1.0;
  spec.near_band = 0.0;
  spec.seed = 9;
  SynthResult sy = gen_matrix(spec);
  for (std::size_t w = 0; w < sy.matrix.n_workloads(); ++w) {
    CHECK(sy.matrix.normalized_performance(sy.matrix.workloads()[w], sy.planted_exemplar) ==
          1.0);
  }
}

TEST_CASE("exemplar in-band fraction concentrates around p") {
  SynthSpec spec;
  spec.n_workloads = 36;
  spec.n_configs = 8;
  spec.exemplar_fraction = 0.75;
  spec.near_band = 0.15;
  const double floor = 0.75 - 2.0 / std::sqrt(36.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    spec.seed = seed;
    SynthResult sy = gen_matrix(spec);
    CHECK(sy.matrix.fraction_within(sy.planted_exemplar, 1.15) >= floor);
  }
}

TEST_CASE("planted exemplar beats a random config on mean NP") {
  int wins = 0;
  const int seeds = 40;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    SynthSpec spec;
    spec.n_workloads = 30;
    spec.n_configs = 8;
    spec.seed = 200 + seed;
    SynthResult sy = gen_matrix(spec);
    const std::size_t e = sy.matrix.config_index(sy.planted_exemplar);
    Rng rng(seed);
    std::size_t other = rng.uniform_index(sy.matrix.n_configs() - 1);
    if (other >= e) ++other;
    double np_e = 0.0, np_o = 0.0;
    for (std::size_t w = 0; w < sy.matrix.n_workloads(); ++w) {
      np_e += sy.matrix.normalized_performance(w, e);
      np_o += sy.matrix.normalized_performance(w, other);
    }
    if (np_e < np_o) ++wins;
  }
  CHECK(wins >= 38);  // 95% of seeds
}

TEST_CASE("time and cost objectives disagree on enough workloads") {
  SynthSpec spec;
  spec.n_workloads = 40;
  spec.n_configs = 10;
  for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
    spec.seed = seed;
    PerfMatrix time_m = gen_matrix(spec, ObjectiveKind::kExecutionTime).matrix;
    PerfMatrix cost_m = gen_matrix(spec, ObjectiveKind::kOperationalCost).matrix;
    std::size_t diverged = 0;
    for (std::size_t w = 0; w < time_m.n_workloads(); ++w) {
      if (time_m.best_config(w) != cost_m.best_config(w)) ++diverged;
    }
    CHECK(diverged >= time_m.n_workloads() * 3 / 10);
  }
}

TEST_CASE("write_dataset emits loadable files plus the truth sidecar") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "micky_synth_test";
  fs::remove_all(dir);
  SynthSpec spec;
  spec.n_workloads = 10;
  spec.n_configs = 5;
  spec.seed = 77;
  const std::string exemplar = write_dataset(spec, dir.string());

  PerfMatrix loaded = load_matrix_files((dir / "configs.csv").string(),
                                        (dir / "measurements.csv").string(),
                                        ObjectiveKind::kExecutionTime);
  CHECK(loaded.n_workloads() == 10);
  CHECK(loaded.n_configs() == 5);
  CHECK_NOTHROW(loaded.config_index(exemplar));

  std::ifstream truth_in(dir / "truth.json");
  REQUIRE(truth_in.good());
  const auto truth = nlohmann::ordered_json::parse(truth_in);
  CHECK(truth.at("planted_exemplar").get<std::string>() == exemplar);
  const SynthSpec parsed = synth_spec_from_json(truth.at("spec"));
  CHECK(parsed.n_workloads == spec.n_workloads);
  CHECK(parsed.seed == spec.seed);
  fs::remove_all(dir);
}
