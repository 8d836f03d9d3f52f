#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "micky/eval.hpp"
#include "micky/outcome.hpp"
#include "micky/synth.hpp"

namespace micky {

nlohmann::ordered_json to_json(const RunOutcome& outcome);
RunOutcome run_outcome_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::ordered_json& j);

// Comparison document: every method's report under a "methods" key.
nlohmann::ordered_json comparison_json(const std::vector<ExperimentReport>& reports);
std::vector<ExperimentReport> comparison_from_json(const nlohmann::ordered_json& j);

// Long-format sample table: method,replication,workload,np,cost.
void write_samples_csv(std::ostream& out, const std::vector<ExperimentReport>& reports);

nlohmann::ordered_json truth_json(const SynthSpec& spec, const std::string& planted_exemplar);
SynthSpec synth_spec_from_json(const nlohmann::ordered_json& j);

// Serialization used everywhere a JSON document leaves the process: two
// space indent plus trailing newline, so byte-identical output is easy to
// compare.
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace micky
