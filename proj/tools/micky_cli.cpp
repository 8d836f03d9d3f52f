#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "micky/eval.hpp"
#include "micky/json_io.hpp"
#include "micky/perf_matrix.hpp"
#include "micky/synth.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::uint64_t seed = 42;
  std::string objective = "cost";
};

struct MethodOpts {
  int alpha = 1;
  double beta = 0.5;
  std::string policy = "ucb1";
  double epsilon = 0.1;
  double temperature = 0.1;
  std::string reward_mode = "online";
  int n_init = 3;
  double ei_stop = 0.10;
  int k_override = 0;  // 0 = keep the method's own k
};

void add_method_flags(CLI::App* cmd, MethodOpts& opts) {
  cmd->add_option("--alpha", opts.alpha, "Phase-1 sweeps over all configs (micky)");
  cmd->add_option("--beta", opts.beta, "Phase-2 pulls per workload (micky)");
  cmd->add_option("--policy", opts.policy, "Bandit policy: ucb1 | epsilon-greedy | softmax")
      ->check(CLI::IsMember({"ucb1", "epsilon-greedy", "softmax"}));
  cmd->add_option("--epsilon", opts.epsilon, "Exploration probability (epsilon-greedy)");
  cmd->add_option("--temperature", opts.temperature, "Softmax temperature");
  cmd->add_option("--reward-mode", opts.reward_mode, "Reward normalizer: online | oracle")
      ->check(CLI::IsMember({"online", "oracle"}));
  cmd->add_option("--n-init", opts.n_init, "Initial random measurements (cherrypick)");
  cmd->add_option("--ei-stop", opts.ei_stop, "Relative EI stopping threshold (cherrypick)");
  cmd->add_option("--k", opts.k_override, "Override k for random-k methods");
}

micky::MethodSpec build_method(const std::string& name, const MethodOpts& opts) {
  micky::MethodSpec spec = micky::MethodSpec::parse(name);
  spec.policy.kind = micky::policy_from_string(opts.policy);
  spec.policy.epsilon = opts.epsilon;
  spec.policy.temperature = opts.temperature;
  spec.policy.validate();
  spec.budget.alpha = opts.alpha;
  spec.budget.beta = opts.beta;
  spec.reward_mode = micky::reward_mode_from_string(opts.reward_mode);
  spec.n_init = opts.n_init;
  spec.ei_stop = opts.ei_stop;
  if (opts.k_override > 0 && spec.kind == micky::MethodKind::kRandomK) {
    spec.k = opts.k_override;
  }
  return spec;
}

micky::PerfMatrix load_data_dir(const std::string& dir, const std::string& objective) {
  return micky::load_matrix_files((fs::path(dir) / "configs.csv").string(),
                                  (fs::path(dir) / "measurements.csv").string(),
                                  micky::objective_from_string(objective));
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw micky::DataError("cannot write " + path.string());
  out << content;
}

nlohmann::ordered_json run_to_json(const micky::MethodSpec& method,
                                   const micky::PerfMatrix& matrix, const CommonOpts& common) {
  const micky::ReplicationResult result =
      micky::run_replication(matrix, method, common.seed);
  nlohmann::ordered_json j;
  j["method"] = method.name;
  j["objective"] = micky::to_string(matrix.objective_kind());
  j["seed"] = common.seed;
  if (method.kind == micky::MethodKind::kMicky) {
    nlohmann::ordered_json outcome = micky::to_json(result.runs.front());
    for (auto& [key, value] : outcome.items()) {
      if (key != "method") j[key] = value;
    }
  } else {
    j["cost"] = result.total_cost;
    auto& runs = j["runs"] = nlohmann::ordered_json::array();
    for (const micky::RunOutcome& outcome : result.runs) {
      runs.push_back(micky::to_json(outcome));
    }
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective cloud-configuration optimizer and evaluation harness"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--seed", common.seed, "Base RNG seed (all randomness derives from it)")
      ->capture_default_str();
  app.add_option("--objective", common.objective,
                 "Objective to minimize: time | cost")
      ->check(CLI::IsMember({"time", "cost"}))
      ->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic workload/config dataset");
  gen->fallthrough();
  std::string gen_spec_path;
  std::string gen_out;
  micky::SynthSpec synth_defaults;
  int gen_workloads = synth_defaults.n_workloads;
  int gen_configs = synth_defaults.n_configs;
  double gen_p = synth_defaults.exemplar_fraction;
  double gen_delta = synth_defaults.near_band;
  double gen_penalty = synth_defaults.penalty_scale;
  double gen_tmin = synth_defaults.base_time_min;
  double gen_tmax = synth_defaults.base_time_max;
  auto* gen_spec_opt = gen->add_option("--spec", gen_spec_path, "Generator spec JSON file");
  gen->add_option("--out", gen_out, "Output directory")->required();
  auto* opt_w = gen->add_option("--workloads", gen_workloads, "Number of workloads");
  auto* opt_c = gen->add_option("--configs", gen_configs, "Number of configs");
  auto* opt_p = gen->add_option("--p", gen_p, "Fraction of workloads near-optimal on the exemplar");
  auto* opt_d = gen->add_option("--delta", gen_delta, "Near-optimal band width");
  auto* opt_ps = gen->add_option("--penalty-scale", gen_penalty, "Exemplar off-case penalty scale");
  auto* opt_t0 = gen->add_option("--time-min", gen_tmin, "Base optimum time lower bound, seconds");
  auto* opt_t1 = gen->add_option("--time-max", gen_tmax, "Base optimum time upper bound, seconds");
  for (CLI::Option* o : {opt_w, opt_c, opt_p, opt_d, opt_ps, opt_t0, opt_t1}) {
    gen_spec_opt->excludes(o);
  }

  // run
  auto* run = app.add_subcommand("run", "Run one optimizer over a dataset");
  run->fallthrough();
  std::string run_method;
  std::string run_data;
  std::string run_out;
  MethodOpts run_opts;
  run->add_option("--method", run_method, "micky | cherrypick | random4 | random8 | brute")
      ->required()
      ->check(CLI::IsMember({"micky", "cherrypick", "random4", "random8", "brute"}));
  run->add_option("--data", run_data, "Dataset directory (configs.csv, measurements.csv)")
      ->required();
  run->add_option("--out", run_out, "Write the outcome JSON here as well as stdout");
  add_method_flags(run, run_opts);

  // eval
  auto* eval = app.add_subcommand("eval", "Replicated comparison of optimizers");
  eval->fallthrough();
  std::string eval_data;
  std::string eval_out;
  std::vector<std::string> eval_methods{"micky", "cherrypick", "random4", "random8", "brute"};
  int eval_reps = 100;
  int eval_threads = 1;
  MethodOpts eval_opts;
  eval->add_option("--data", eval_data, "Dataset directory")->required();
  eval->add_option("--out", eval_out, "Report output directory")->required();
  eval->add_option("--methods", eval_methods, "Methods to compare")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--reps", eval_reps, "Replications per method")->capture_default_str();
  eval->add_option("--threads", eval_threads, "Worker threads (output is thread-count independent)")
      ->capture_default_str();
  add_method_flags(eval, eval_opts);

  // knee
  auto* knee = app.add_subcommand("knee", "Recurrence count at which a per-workload optimizer pays off");
  knee->fallthrough();
  micky::KneeInputs knee_in;
  knee->add_option("--delta-p", knee_in.delta_p, "Fractional performance loss per run")
      ->required();
  knee->add_option("--savings", knee_in.savings, "Measurements saved per workload")->required();
  knee->add_option("--ratio", knee_in.cp_over_cm, "Performance-to-measurement cost ratio")
      ->capture_default_str();

  try {
    app.parse(argc, argv);

    if (gen->parsed()) {
      micky::SynthSpec spec;
      if (!gen_spec_path.empty()) {
        std::ifstream in(gen_spec_path);
        if (!in) throw micky::DataError("cannot open " + gen_spec_path);
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
        spec = micky::synth_spec_from_json(j);
      } else {
        spec.n_workloads = gen_workloads;
        spec.n_configs = gen_configs;
        spec.exemplar_fraction = gen_p;
        spec.near_band = gen_delta;
        spec.penalty_scale = gen_penalty;
        spec.base_time_min = gen_tmin;
        spec.base_time_max = gen_tmax;
      }
      if (app.count("--seed") > 0 || gen_spec_path.empty()) spec.seed = common.seed;
      spec.validate();
      const std::string exemplar = micky::write_dataset(spec, gen_out);
      std::cerr << "wrote dataset to " << gen_out << "\n";
      std::cout << exemplar << "\n";
      return 0;
    }

    if (run->parsed()) {
      const micky::MethodSpec method = build_method(run_method, run_opts);
      const micky::PerfMatrix matrix = load_data_dir(run_data, common.objective);
      const std::string payload = micky::dump_json(run_to_json(method, matrix, common));
      if (!run_out.empty()) write_text(run_out, payload);
      std::cout << payload;
      return 0;
    }

    if (eval->parsed()) {
      const micky::PerfMatrix matrix = load_data_dir(eval_data, common.objective);
      fs::create_directories(eval_out);
      std::vector<micky::ExperimentReport> reports;
      reports.reserve(eval_methods.size());
      for (const std::string& name : eval_methods) {
        const micky::MethodSpec method = build_method(name, eval_opts);
        std::cerr << "evaluating " << name << " (" << eval_reps << " reps)\n";
        reports.push_back(
            micky::replicate(matrix, method, eval_reps, common.seed, eval_threads));
        write_text(fs::path(eval_out) / ("report_" + name + ".json"),
                   micky::dump_json(micky::to_json(reports.back())));
      }
      const std::string comparison = micky::dump_json(micky::comparison_json(reports));
      write_text(fs::path(eval_out) / "comparison.json", comparison);
      {
        std::ofstream csv(fs::path(eval_out) / "samples.csv", std::ios::binary);
        if (!csv) throw micky::DataError("cannot write samples.csv");
        micky::write_samples_csv(csv, reports);
      }
      std::cout << comparison;
      return 0;
    }

    if (knee->parsed()) {
      const auto k = micky::knee_point(knee_in);
      if (k) {
        std::cout << *k << "\n";
      } else {
        std::cout << "never\n";
      }
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return 2;
  } catch (const micky::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
