#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "micky/baselines.hpp"
#include "micky/collective.hpp"
#include "micky/eval.hpp"
#include "micky/json_io.hpp"
#include "micky/perf_matrix.hpp"
#include "micky/synth.hpp"

namespace py = pybind11;
using namespace micky;

namespace {

MethodSpec method_from_kwargs(const std::string& name, const std::string& policy,
                              double epsilon, double temperature, int alpha, double beta,
                              const std::string& reward_mode, int n_init, double ei_stop,
                              int k) {
  MethodSpec spec = MethodSpec::parse(name);
  spec.policy.kind = policy_from_string(policy);
  spec.policy.epsilon = epsilon;
  spec.policy.temperature = temperature;
  spec.policy.validate();
  spec.budget.alpha = alpha;
  spec.budget.beta = beta;
  spec.reward_mode = reward_mode_from_string(reward_mode);
  spec.n_init = n_init;
  spec.ei_stop = ei_stop;
  if (k > 0 && spec.kind == MethodKind::kRandomK) spec.k = k;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Collective cloud-configuration optimizer (multi-armed bandit) "
            "with per-workload baselines and an evaluation harness";

  py::register_exception<DataError>(m, "DataError");

  py::class_<CloudConfig>(m, "CloudConfig")
      .def_readonly("id", &CloudConfig::id)
      .def_property_readonly("family",
                             [](const CloudConfig& c) { return std::string(to_string(c.family)); })
      .def_readonly("size_tier", &CloudConfig::size_tier)
      .def_readonly("vcpus", &CloudConfig::vcpus)
      .def_readonly("mem_gb", &CloudConfig::mem_gb)
      .def_readonly("price_per_hour", &CloudConfig::price_per_hour)
      .def_readonly("ebs_mbps", &CloudConfig::ebs_mbps)
      .def("__repr__", [](const CloudConfig& c) { return "<CloudConfig " + c.id + ">"; });

  py::class_<PerfMatrix>(m, "PerfMatrix")
      .def_property_readonly("n_workloads", &PerfMatrix::n_workloads)
      .def_property_readonly("n_configs", &PerfMatrix::n_configs)
      .def_property_readonly("workloads",
                             [](const PerfMatrix& m_) { return m_.workloads(); })
      .def_property_readonly("configs", [](const PerfMatrix& m_) { return m_.configs(); })
      .def_property_readonly(
          "objective_kind",
          [](const PerfMatrix& m_) { return std::string(to_string(m_.objective_kind())); })
      .def("objective",
           py::overload_cast<const std::string&, const std::string&>(&PerfMatrix::objective,
                                                                     py::const_),
           py::arg("workload"), py::arg("config"))
      .def("normalized_performance",
           py::overload_cast<const std::string&, const std::string&>(
               &PerfMatrix::normalized_performance, py::const_),
           py::arg("workload"), py::arg("config"))
      .def(
          "best_config",
          [](const PerfMatrix& m_, const std::string& w) { return m_.best_config(w); },
          py::arg("workload"))
      .def(
          "fraction_within",
          [](const PerfMatrix& m_, const std::string& config, double threshold) {
            return m_.fraction_within(config, threshold);
          },
          py::arg("config"), py::arg("threshold"))
      .def("__repr__", [](const PerfMatrix& m_) {
        std::ostringstream out;
        out << "<PerfMatrix " << m_.n_workloads() << "x" << m_.n_configs() << " "
            << to_string(m_.objective_kind()) << ">";
        return out.str();
      });

  m.def(
      "load_matrix",
      [](const std::string& configs, const std::string& measurements,
         const std::string& objective) {
        return load_matrix_files(configs, measurements, objective_from_string(objective));
      },
      py::arg("configs_csv"), py::arg("measurements_csv"), py::arg("objective") = "cost",
      "Load a complete workload x config matrix from the two CSV tables");

  py::class_<SynthSpec>(m, "SynthSpec")
      .def(py::init([](int n_workloads, int n_configs, double p, double delta,
                       double penalty_scale, double base_time_min, double base_time_max,
                       std::uint64_t seed) {
             SynthSpec spec;
             spec.n_workloads = n_workloads;
             spec.n_configs = n_configs;
             spec.exemplar_fraction = p;
             spec.near_band = delta;
             spec.penalty_scale = penalty_scale;
             spec.base_time_min = base_time_min;
             spec.base_time_max = base_time_max;
             spec.seed = seed;
             spec.validate();
             return spec;
           }),
           py::arg("n_workloads") = 40, py::arg("n_configs") = 10, py::arg("p") = 0.8,
           py::arg("delta") = 0.1, py::arg("penalty_scale") = 0.2,
           py::arg("base_time_min") = 60.0, py::arg("base_time_max") = 3600.0,
           py::arg("seed") = 42)
      .def_readwrite("n_workloads", &SynthSpec::n_workloads)
      .def_readwrite("n_configs", &SynthSpec::n_configs)
      .def_readwrite("seed", &SynthSpec::seed);

  m.def(
      "gen_matrix",
      [](const SynthSpec& spec, const std::string& objective) {
        SynthResult result = gen_matrix(spec, objective_from_string(objective));
        return py::make_tuple(std::move(result.matrix), result.planted_exemplar);
      },
      py::arg("spec"), py::arg("objective") = "time",
      "Generate a planted-exemplar matrix; returns (matrix, planted_config_id)");
  m.def("write_dataset", &write_dataset, py::arg("spec"), py::arg("out_dir"),
        "Write configs.csv, measurements.csv and truth.json; returns the planted id");

  py::class_<RunOutcome>(m, "RunOutcome")
      .def_readonly("method", &RunOutcome::method)
      .def_readonly("workload", &RunOutcome::workload)
      .def_readonly("exemplar", &RunOutcome::exemplar)
      .def_readonly("cost", &RunOutcome::cost)
      .def_property_readonly("pull_log",
                             [](const RunOutcome& o) {
                               py::list log;
                               for (const PullEntry& e : o.pull_log.entries) {
                                 py::dict d;
                                 d["workload"] = e.workload;
                                 d["config"] = e.config;
                                 d["value"] = e.value;
                                 d["reward"] = e.reward;
                                 log.append(d);
                               }
                               return log;
                             })
      .def("to_json", [](const RunOutcome& o) { return dump_json(to_json(o)); })
      .def("__repr__", [](const RunOutcome& o) {
        return "<RunOutcome " + o.method + " exemplar=" + o.exemplar +
               " cost=" + std::to_string(o.cost) + ">";
      });

  m.def(
      "run_micky",
      [](const PerfMatrix& matrix, const std::string& policy, double epsilon,
         double temperature, int alpha, double beta, const std::string& reward_mode,
         std::uint64_t seed) {
        PolicySpec p;
        p.kind = policy_from_string(policy);
        p.epsilon = epsilon;
        p.temperature = temperature;
        p.validate();
        Budget b;
        b.alpha = alpha;
        b.beta = beta;
        return run_micky(matrix, p, b, reward_mode_from_string(reward_mode), seed);
      },
      py::arg("matrix"), py::arg("policy") = "ucb1", py::arg("epsilon") = 0.1,
      py::arg("temperature") = 0.1, py::arg("alpha") = 1, py::arg("beta") = 0.5,
      py::arg("reward_mode") = "online", py::arg("seed") = 42,
      "Two-phase collective search; returns the group exemplar and pull log");

  m.def(
      "run_cherrypick",
      [](const PerfMatrix& matrix, const std::string& workload, std::uint64_t seed, int n_init,
         double ei_stop) {
        return run_cherrypick(matrix, matrix.workload_index(workload), seed, n_init, ei_stop);
      },
      py::arg("matrix"), py::arg("workload"), py::arg("seed") = 42, py::arg("n_init") = 3,
      py::arg("ei_stop") = 0.10);
  m.def(
      "run_random_k",
      [](const PerfMatrix& matrix, const std::string& workload, int k, std::uint64_t seed) {
        return run_random_k(matrix, matrix.workload_index(workload), k, seed);
      },
      py::arg("matrix"), py::arg("workload"), py::arg("k") = 4, py::arg("seed") = 42);
  m.def(
      "run_brute",
      [](const PerfMatrix& matrix, const std::string& workload) {
        return run_brute(matrix, matrix.workload_index(workload));
      },
      py::arg("matrix"), py::arg("workload"));

  py::class_<ExperimentReport>(m, "ExperimentReport")
      .def_readonly("method", &ExperimentReport::method)
      .def_readonly("replications", &ExperimentReport::replications)
      .def_readonly("np_quantiles", &ExperimentReport::np_quantiles)
      .def_readonly("threshold_fractions", &ExperimentReport::threshold_fractions)
      .def_readonly("cost_min", &ExperimentReport::cost_min)
      .def_readonly("cost_median", &ExperimentReport::cost_median)
      .def_readonly("cost_max", &ExperimentReport::cost_max)
      .def_readonly("exemplar_histogram", &ExperimentReport::exemplar_histogram)
      .def("to_json", [](const ExperimentReport& r) { return dump_json(to_json(r)); })
      .def("__repr__", [](const ExperimentReport& r) {
        return "<ExperimentReport " + r.method + " reps=" + std::to_string(r.replications) +
               ">";
      });

  m.def(
      "replicate",
      [](const PerfMatrix& matrix, const std::string& method, int n_reps,
         std::uint64_t base_seed, int threads, const std::string& policy, double epsilon,
         double temperature, int alpha, double beta, const std::string& reward_mode,
         int n_init, double ei_stop, int k) {
        const MethodSpec spec = method_from_kwargs(method, policy, epsilon, temperature, alpha,
                                                   beta, reward_mode, n_init, ei_stop, k);
        return replicate(matrix, spec, n_reps, base_seed, threads);
      },
      py::arg("matrix"), py::arg("method"), py::arg("n_reps") = 100, py::arg("base_seed") = 42,
      py::arg("threads") = 1, py::arg("policy") = "ucb1", py::arg("epsilon") = 0.1,
      py::arg("temperature") = 0.1, py::arg("alpha") = 1, py::arg("beta") = 0.5,
      py::arg("reward_mode") = "online", py::arg("n_init") = 3, py::arg("ei_stop") = 0.10,
      py::arg("k") = 0,
      "Run a method n_reps times with seeds base_seed + i and aggregate the report");

  m.def(
      "cost_curve",
      [](const PerfMatrix& matrix, const std::vector<std::size_t>& workload_counts,
         const std::vector<std::string>& methods, const std::vector<std::uint64_t>& seeds) {
        std::vector<MethodSpec> specs;
        specs.reserve(methods.size());
        for (const std::string& name : methods) specs.push_back(MethodSpec::parse(name));
        py::list rows;
        for (const CostCurveRow& row : cost_curve(matrix, workload_counts, specs, seeds)) {
          py::dict d;
          d["n_workloads"] = row.n_workloads;
          d["method"] = row.method;
          d["median_total_cost"] = row.median_total_cost;
          rows.append(d);
        }
        return rows;
      },
      py::arg("matrix"), py::arg("workload_counts"), py::arg("methods"), py::arg("seeds"));

  m.def(
      "knee_point",
      [](double delta_p, double savings, double ratio) -> std::optional<std::int64_t> {
        return knee_point(KneeInputs{delta_p, savings, ratio});
      },
      py::arg("delta_p"), py::arg("savings"), py::arg("ratio") = 10.0,
      "Recurrence count at which a per-workload optimizer pays off; None means never");
}
