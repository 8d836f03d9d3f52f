#include <doctest.h>

#include <sstream>
#include <string>

#include "micky/perf_matrix.hpp"
#include "micky/rng.hpp"
#include "micky/synth.hpp"

using namespace micky;

namespace {

const char* kConfigsCsv =
    "config_id,family,size_tier,vcpus,mem_gb,price_per_hour_usd,ebs_mbps\n"
    "c1,compute-optimized,large,2,4,1.0,500\n"
    "c2,general-purpose,large,2,8,0.10,500\n";

PerfMatrix load(const std::string& measurements, ObjectiveKind kind) {
  std::istringstream configs(kConfigsCsv);
  std::istringstream meas(measurements);
  return load_matrix(configs, meas, kind);
}

PerfMatrix from_rows(std::vector<std::vector<double>> rows, ObjectiveKind kind,
                     std::vector<double> prices = {}) {
  const std::size_t n_s = rows[0].size();
  std::vector<CloudConfig> configs;
  for (std::size_t s = 0; s < n_s; ++s) {
    CloudConfig c;
    c.id = "s" + std::to_string(s);
    c.family = InstanceFamily::kGeneral;
    c.size_tier = "large";
    c.vcpus = 2;
    c.mem_gb = 8.0;
    c.price_per_hour = prices.empty() ? 1.0 : prices[s];
    configs.push_back(c);
  }
  std::vector<std::string> workloads;
  std::vector<double> elapsed;
  for (std::size_t w = 0; w < rows.size(); ++w) {
    workloads.push_back("w" + std::to_string(w));
    for (double v : rows[w]) elapsed.push_back(v);
  }
  return PerfMatrix(workloads, configs, elapsed, kind);
}

}  // namespace

TEST_CASE("load_matrix accepts a minimal complete table") {
  PerfMatrix m = load(
      "workload_id,config_id,elapsed_seconds\n"
      "w1,c1,100\n"
      "w1,c2,200\n"
      "w2,c2,50\n"
      "w2,c1,75\n",
      ObjectiveKind::kExecutionTime);
  CHECK(m.n_workloads() == 2);
  CHECK(m.n_configs() == 2);
  CHECK(m.elapsed_seconds(0, 0) == 100.0);
  CHECK(m.elapsed_seconds(1, 1) == 50.0);  // row order in file is irrelevant
  CHECK(m.configs()[1].price_per_hour == 0.10);
}

TEST_CASE("load_matrix rejects an incomplete matrix naming the missing pair") {
  try {
    load(
        "workload_id,config_id,elapsed_seconds\n"
        "w1,c1,100\nw1,c2,200\nw2,c1,75\n",
        ObjectiveKind::kExecutionTime);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string what = e.what();
    CHECK(what.find("incomplete matrix") != std::string::npos);
    CHECK(what.find("(w2, c2)") != std::string::npos);
  }
}

TEST_CASE("load_matrix rejects duplicates and non-positive values") {
  CHECK_THROWS_WITH_AS(load(
                           "workload_id,config_id,elapsed_seconds\n"
                           "w1,c1,100\n"
                           "w1,c1,100\n"
                           "w1,c2,200\n",
                           ObjectiveKind::kExecutionTime),
                       doctest::Contains("duplicate measurement"), DataError);
  CHECK_THROWS_AS(load(
                      "workload_id,config_id,elapsed_seconds\n"
                      "w1,c1,0\n"
                      "w1,c2,200\n",
                      ObjectiveKind::kExecutionTime),
                  DataError);
  CHECK_THROWS_AS(load(
                      "workload_id,config_id,elapsed_seconds\n"
                      "w1,c1,abc\n"
                      "w1,c2,200\n",
                      ObjectiveKind::kExecutionTime),
                  DataError);
  CHECK_THROWS_WITH_AS(load(
                           "bad,header\n"
                           "w1,c1,100\n",
                           ObjectiveKind::kExecutionTime),
                       doctest::Contains("bad header"), DataError);
}

TEST_CASE("objective converts units per kind") {
  PerfMatrix m = load(
      "workload_id,config_id,elapsed_seconds\n"
      "w1,c1,3600\n"
      "w1,c2,7200\n",
      ObjectiveKind::kOperationalCost);
  // 3600 s at 1.00 USD/h is exactly one dollar
  CHECK(m.objective("w1", "c1") == doctest::Approx(1.0));
  CHECK(m.objective("w1", "c2") == doctest::Approx(0.20));

  PerfMatrix t = load(
      "workload_id,config_id,elapsed_seconds\n"
      "w1,c1,120\n"
      "w1,c2,7200\n",
      ObjectiveKind::kExecutionTime);
  CHECK(t.objective("w1", "c1") == 120.0);
  CHECK_THROWS_AS(t.objective("w1", "nope"), DataError);
  CHECK_THROWS_AS(t.objective("nope", "c1"), DataError);
}

TEST_CASE("normalized performance divides by the row optimum") {
  PerfMatrix m = from_rows({{100.0, 120.0, 150.0}}, ObjectiveKind::kExecutionTime);
  CHECK(m.normalized_performance(0, 0) == doctest::Approx(1.0));
  CHECK(m.normalized_performance(0, 1) == doctest::Approx(1.2));
  CHECK(m.normalized_performance(0, 2) == doctest::Approx(1.5));
}

TEST_CASE("best_config takes the argmin with lowest-index ties") {
  PerfMatrix m = from_rows({{5.0, 3.0, 4.0}, {3.0, 3.0, 4.0}}, ObjectiveKind::kExecutionTime);
  CHECK(m.best_config(0) == 1);
  CHECK(m.best_config(1) == 0);
  for (std::size_t w = 0; w < m.n_workloads(); ++w) {
    CHECK(m.normalized_performance(w, m.best_config(w)) == 1.0);
  }
}

TEST_CASE("fraction_within counts workloads inside the threshold") {
  PerfMatrix m = from_rows({{10.0, 12.0}, {10.0, 12.5}, {10.0, 14.0}},
                           ObjectiveKind::kExecutionTime);
  // NP of config 1 per workload: 1.2, 1.25, 1.4
  CHECK(m.fraction_within(1, 1.3) == doctest::Approx(2.0 / 3.0));
  CHECK(m.fraction_within(0, 1.0) == doctest::Approx(1.0));
  CHECK(m.fraction_within(1, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("fraction_within is monotone in the threshold") {
  SynthSpec spec;
  spec.seed = 5;
  PerfMatrix m = gen_matrix(spec).matrix;
  for (std::size_t s = 0; s < m.n_configs(); ++s) {
    double prev = 0.0;
    for (double threshold : {1.0, 1.05, 1.1, 1.2, 1.4, 2.0, 10.0}) {
      double f = m.fraction_within(s, threshold);
      CHECK(f >= prev);
      prev = f;
    }
  }
}

TEST_CASE("planted exemplar fraction matches the generator parameter") {
  // p = 0.7 with band 1.2: the in-band count is exact up to quota rounding.
  SynthSpec spec;
  spec.n_workloads = 40;
  spec.n_configs = 10;
  spec.exemplar_fraction = 0.7;
  spec.near_band = 0.2;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    spec.seed = seed;
    SynthResult sy = gen_matrix(spec);
    const double f = sy.matrix.fraction_within(sy.planted_exemplar, 1.2);
    CHECK(f >= 0.7 - 1.0 / spec.n_workloads);
    CHECK(f <= 0.7 + 1.0 / spec.n_workloads);
  }
}

TEST_CASE("scaling all elapsed times preserves NP and best_config") {
  SynthSpec spec;
  spec.n_workloads = 8;
  spec.n_configs = 5;
  spec.seed = 11;
  PerfMatrix m = gen_matrix(spec).matrix;
  std::vector<double> scaled;
  for (std::size_t w = 0; w < m.n_workloads(); ++w) {
    for (std::size_t s = 0; s < m.n_configs(); ++s) {
      scaled.push_back(m.elapsed_seconds(w, s) * 7.5);
    }
  }
  PerfMatrix m2(m.workloads(), m.configs(), scaled, m.objective_kind());
  for (std::size_t w = 0; w < m.n_workloads(); ++w) {
    CHECK(m2.best_config(w) == m.best_config(w));
    for (std::size_t s = 0; s < m.n_configs(); ++s) {
      CHECK(m2.normalized_performance(w, s) ==
            doctest::Approx(m.normalized_performance(w, s)));
    }
  }
}

TEST_CASE("uniform price scaling leaves the cost-objective argmin unchanged") {
  PerfMatrix m = from_rows({{100.0, 90.0, 80.0}, {50.0, 60.0, 70.0}},
                           ObjectiveKind::kOperationalCost, {0.4, 0.2, 0.3});
  std::vector<CloudConfig> configs = m.configs();
  for (CloudConfig& c : configs) c.price_per_hour *= 3.0;
  std::vector<double> elapsed;
  for (std::size_t w = 0; w < m.n_workloads(); ++w)
    for (std::size_t s = 0; s < m.n_configs(); ++s) elapsed.push_back(m.elapsed_seconds(w, s));
  PerfMatrix m2(m.workloads(), configs, elapsed, ObjectiveKind::kOperationalCost);
  for (std::size_t w = 0; w < m.n_workloads(); ++w) {
    CHECK(m2.best_config(w) == m.best_config(w));
  }
}

TEST_CASE("NP is at least one and hits one somewhere in every row") {
  SynthSpec spec;
  spec.seed = 21;
  PerfMatrix m = gen_matrix(spec, ObjectiveKind::kOperationalCost).matrix;
  for (std::size_t w = 0; w < m.n_workloads(); ++w) {
    double row_min = 1e300;
    for (std::size_t s = 0; s < m.n_configs(); ++s) {
      const double np = m.normalized_performance(w, s);
      CHECK(np >= 1.0);
      row_min = std::min(row_min, np);
    }
    CHECK(row_min == 1.0);
  }
}

TEST_CASE("a trace-sized table loads with the right dimensions") {
  SynthSpec spec;
  spec.n_workloads = 107;
  spec.n_configs = 18;
  spec.seed = 4;
  SynthResult sy = gen_matrix(spec);
  std::ostringstream configs_out, meas_out;
  write_configs_csv(configs_out, sy.matrix.configs());
  write_measurements_csv(meas_out, sy.matrix);
  std::istringstream configs_in(configs_out.str()), meas_in(meas_out.str());
  PerfMatrix loaded = load_matrix(configs_in, meas_in, ObjectiveKind::kExecutionTime);
  CHECK(loaded.n_workloads() == 107);
  CHECK(loaded.n_configs() == 18);
  // shortest round-trip float formatting: cells survive exactly
  for (std::size_t w = 0; w < loaded.n_workloads(); w += 13) {
    for (std::size_t s = 0; s < loaded.n_configs(); s += 5) {
      CHECK(loaded.elapsed_seconds(w, s) == sy.matrix.elapsed_seconds(w, s));
    }
  }
}

TEST_CASE("subset keeps config order and selected workloads") {
  SynthSpec spec;
  spec.n_workloads = 10;
  spec.n_configs = 4;
  spec.seed = 2;
  PerfMatrix m = gen_matrix(spec).matrix;
  PerfMatrix sub = m.subset({1, 4, 7});
  CHECK(sub.n_workloads() == 3);
  CHECK(sub.workloads()[1] == m.workloads()[4]);
  CHECK(sub.elapsed_seconds(2, 3) == m.elapsed_seconds(7, 3));
  CHECK_THROWS_AS(m.subset({42}), DataError);
}
