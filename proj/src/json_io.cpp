#include "micky/json_io.hpp"

#include <charconv>
#include <ostream>

namespace micky {

namespace {

// Map keys are doubles (quantiles, thresholds); format with the shortest
// round-trip representation so 0.1 stays "0.1".
std::string double_key(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

nlohmann::ordered_json to_json(const RunOutcome& outcome) {
  nlohmann::ordered_json j;
  j["method"] = outcome.method;
  if (outcome.workload) j["workload"] = *outcome.workload;
  j["exemplar"] = outcome.exemplar;
  j["cost"] = outcome.cost;
  auto& log = j["pull_log"] = nlohmann::ordered_json::array();
  for (const PullEntry& e : outcome.pull_log.entries) {
    log.push_back({{"workload", e.workload},
                   {"config", e.config},
                   {"value", e.value},
                   {"reward", e.reward}});
  }
  auto& arms = j["arm_stats"] = nlohmann::ordered_json::array();
  for (const ArmReport& a : outcome.arm_stats) {
    arms.push_back({{"config", a.config}, {"pulls", a.pulls}, {"mean_reward", a.mean_reward}});
  }
  return j;
}

RunOutcome run_outcome_from_json(const nlohmann::ordered_json& j) {
  RunOutcome outcome;
  outcome.method = j.at("method").get<std::string>();
  if (j.contains("workload")) outcome.workload = j.at("workload").get<std::string>();
  outcome.exemplar = j.at("exemplar").get<std::string>();
  outcome.cost = j.at("cost").get<std::int64_t>();
  for (const auto& e : j.at("pull_log")) {
    outcome.pull_log.entries.push_back({e.at("workload").get<std::string>(),
                                        e.at("config").get<std::string>(),
                                        e.at("value").get<double>(),
                                        e.at("reward").get<double>()});
  }
  for (const auto& a : j.at("arm_stats")) {
    outcome.arm_stats.push_back({a.at("config").get<std::string>(),
                                 a.at("pulls").get<std::int64_t>(),
                                 a.at("mean_reward").get<double>()});
  }
  return outcome;
}

nlohmann::ordered_json to_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["method"] = report.method;
  j["replications"] = report.replications;
  auto& quantiles = j["np_quantiles"] = nlohmann::ordered_json::object();
  for (const auto& [q, v] : report.np_quantiles) quantiles[double_key(q)] = v;
  auto& fractions = j["threshold_fractions"] = nlohmann::ordered_json::object();
  for (const auto& [t, v] : report.threshold_fractions) fractions[double_key(t)] = v;
  j["total_cost_stats"] = {{"min", report.cost_min},
                           {"median", report.cost_median},
                           {"max", report.cost_max}};
  auto& hist = j["exemplar_histogram"] = nlohmann::ordered_json::object();
  for (const auto& [config, count] : report.exemplar_histogram) hist[config] = count;
  return j;
}

ExperimentReport report_from_json(const nlohmann::ordered_json& j) {
  ExperimentReport report;
  report.method = j.at("method").get<std::string>();
  report.replications = j.at("replications").get<int>();
  for (const auto& [key, value] : j.at("np_quantiles").items()) {
    report.np_quantiles[std::stod(key)] = value.get<double>();
  }
  for (const auto& [key, value] : j.at("threshold_fractions").items()) {
    report.threshold_fractions[std::stod(key)] = value.get<double>();
  }
  const auto& cost = j.at("total_cost_stats");
  report.cost_min = cost.at("min").get<std::int64_t>();
  report.cost_median = cost.at("median").get<double>();
  report.cost_max = cost.at("max").get<std::int64_t>();
  for (const auto& [key, value] : j.at("exemplar_histogram").items()) {
    report.exemplar_histogram[key] = value.get<std::int64_t>();
  }
  return report;
}

nlohmann::ordered_json comparison_json(const std::vector<ExperimentReport>& reports) {
  nlohmann::ordered_json j;
  auto& methods = j["methods"] = nlohmann::ordered_json::object();
  for (const ExperimentReport& report : reports) {
    methods[report.method] = to_json(report);
  }
  return j;
}

std::vector<ExperimentReport> comparison_from_json(const nlohmann::ordered_json& j) {
  std::vector<ExperimentReport> reports;
  for (const auto& [name, value] : j.at("methods").items()) {
    reports.push_back(report_from_json(value));
    reports.back().method = name;
  }
  return reports;
}

void write_samples_csv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  out << "method,replication,workload,np,cost\n";
  char buf[64];
  for (const ExperimentReport& report : reports) {
    for (const ExperimentReport::Sample& s : report.samples) {
      out << report.method << ',' << s.replication << ',' << s.workload << ',';
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), s.np);
      (void)ec;
      out.write(buf, ptr - buf);
      out << ',' << s.cost << '\n';
    }
  }
}

nlohmann::ordered_json truth_json(const SynthSpec& spec, const std::string& planted_exemplar) {
  nlohmann::ordered_json j;
  j["planted_exemplar"] = planted_exemplar;
  j["spec"] = {{"n_workloads", spec.n_workloads},
               {"n_configs", spec.n_configs},
               {"exemplar_fraction", spec.exemplar_fraction},
               {"near_band", spec.near_band},
               {"penalty_scale", spec.penalty_scale},
               {"base_time_min", spec.base_time_min},
               {"base_time_max", spec.base_time_max},
               {"seed", spec.seed}};
  return j;
}

SynthSpec synth_spec_from_json(const nlohmann::ordered_json& j) {
  SynthSpec spec;
  spec.n_workloads = j.value("n_workloads", spec.n_workloads);
  spec.n_configs = j.value("n_configs", spec.n_configs);
  spec.exemplar_fraction = j.value("exemplar_fraction", spec.exemplar_fraction);
  spec.near_band = j.value("near_band", spec.near_band);
  spec.penalty_scale = j.value("penalty_scale", spec.penalty_scale);
  spec.base_time_min = j.value("base_time_min", spec.base_time_min);
  spec.base_time_max = j.value("base_time_max", spec.base_time_max);
  spec.seed = j.value("seed", spec.seed);
  spec.validate();
  return spec;
}

std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace micky
