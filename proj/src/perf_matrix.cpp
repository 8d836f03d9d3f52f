#include "micky/perf_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace micky {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, const std::string& context) {
  const std::string t = trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw DataError(context + ": not a number: '" + field + "'");
  }
  return value;
}

long parse_long(const std::string& field, const std::string& context) {
  const std::string t = trim(field);
  long value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw DataError(context + ": not an integer: '" + field + "'");
  }
  return value;
}

// Reads one CSV table; checks the exact header and per-row field count.
class CsvReader {
 public:
  CsvReader(std::istream& in, const std::string& expected_header, std::string name)
      : in_(in), name_(std::move(name)) {
    std::string header;
    if (!std::getline(in_, header)) {
      throw DataError(name_ + ": empty file");
    }
    if (trim(header) != expected_header) {
      throw DataError(name_ + ": bad header, expected '" + expected_header + "'");
    }
    n_fields_ = split_fields(expected_header).size();
  }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (trim(line).empty()) continue;
      fields = split_fields(line);
      if (fields.size() != n_fields_) {
        throw DataError(location() + ": expected " + std::to_string(n_fields_) +
                        " fields, got " + std::to_string(fields.size()));
      }
      return true;
    }
    return false;
  }

  std::string location() const { return name_ + " line " + std::to_string(line_no_ + 1); }

 private:
  std::istream& in_;
  std::string name_;
  std::size_t n_fields_ = 0;
  std::size_t line_no_ = 0;  // data lines, header excluded
};

void format_double(std::ostream& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.write(buf, ptr - buf);
  (void)ec;
}

}  // namespace

const char* to_string(InstanceFamily family) {
  switch (family) {
    case InstanceFamily::kCompute: return "compute-optimized";
    case InstanceFamily::kMemory: return "memory-optimized";
    case InstanceFamily::kGeneral: return "general-purpose";
  }
  return "general-purpose";
}

InstanceFamily family_from_string(const std::string& label) {
  if (label == "compute-optimized") return InstanceFamily::kCompute;
  if (label == "memory-optimized") return InstanceFamily::kMemory;
  if (label == "general-purpose") return InstanceFamily::kGeneral;
  throw DataError("unknown instance family: '" + label + "'");
}

const char* to_string(ObjectiveKind kind) {
  return kind == ObjectiveKind::kExecutionTime ? "execution-time" : "operational-cost";
}

ObjectiveKind objective_from_string(const std::string& label) {
  if (label == "execution-time" || label == "time") return ObjectiveKind::kExecutionTime;
  if (label == "operational-cost" || label == "cost") return ObjectiveKind::kOperationalCost;
  throw DataError("unknown objective kind: '" + label + "'");
}

void CloudConfig::validate() const {
  if (id.empty()) throw DataError("config with empty id");
  if (vcpus < 1) throw DataError("config " + id + ": vcpus must be >= 1");
  if (!(mem_gb > 0)) throw DataError("config " + id + ": mem_gb must be > 0");
  if (!(price_per_hour > 0)) throw DataError("config " + id + ": price_per_hour must be > 0");
  if (ebs_mbps < 0) throw DataError("config " + id + ": ebs_mbps must be >= 0");
}

PerfMatrix::PerfMatrix(std::vector<std::string> workloads, std::vector<CloudConfig> configs,
                       std::vector<double> elapsed_seconds, ObjectiveKind kind)
    : workloads_(std::move(workloads)),
      configs_(std::move(configs)),
      elapsed_(std::move(elapsed_seconds)),
      kind_(kind) {
  if (workloads_.empty()) throw DataError("matrix needs at least one workload");
  if (configs_.size() < 2) throw DataError("matrix needs at least two configs");
  if (elapsed_.size() != workloads_.size() * configs_.size()) {
    throw DataError("elapsed table size does not match |W| x |S|");
  }
  for (double v : elapsed_) {
    if (!(v > 0)) throw DataError("elapsed values must be > 0");
  }
  for (std::size_t i = 0; i < workloads_.size(); ++i) {
    if (!workload_by_id_.emplace(workloads_[i], i).second) {
      throw DataError("duplicate workload id: " + workloads_[i]);
    }
  }
  for (std::size_t i = 0; i < configs_.size(); ++i) {
    configs_[i].validate();
    if (!config_by_id_.emplace(configs_[i].id, i).second) {
      throw DataError("duplicate config id: " + configs_[i].id);
    }
  }
  row_min_.resize(workloads_.size());
  row_argmin_.resize(workloads_.size());
  for (std::size_t w = 0; w < workloads_.size(); ++w) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t s = 0; s < configs_.size(); ++s) {
      double v = objective(w, s);
      if (v < best) {
        best = v;
        arg = s;
      }
    }
    row_min_[w] = best;
    row_argmin_[w] = arg;
  }
}

std::size_t PerfMatrix::workload_index(const std::string& id) const {
  auto it = workload_by_id_.find(id);
  if (it == workload_by_id_.end()) throw DataError("unknown workload id: " + id);
  return it->second;
}

std::size_t PerfMatrix::config_index(const std::string& id) const {
  auto it = config_by_id_.find(id);
  if (it == config_by_id_.end()) throw DataError("unknown config id: " + id);
  return it->second;
}

double PerfMatrix::objective(std::size_t w, std::size_t s) const {
  double elapsed = elapsed_seconds(w, s);
  if (kind_ == ObjectiveKind::kExecutionTime) return elapsed;
  return elapsed * configs_[s].price_per_hour / 3600.0;
}

double PerfMatrix::objective(const std::string& w, const std::string& s) const {
  return objective(workload_index(w), config_index(s));
}

double PerfMatrix::normalized_performance(std::size_t w, std::size_t s) const {
  return objective(w, s) / row_min_[w];
}

double PerfMatrix::normalized_performance(const std::string& w, const std::string& s) const {
  return normalized_performance(workload_index(w), config_index(s));
}

const std::string& PerfMatrix::best_config(const std::string& w) const {
  return configs_[row_argmin_[workload_index(w)]].id;
}

double PerfMatrix::fraction_within(std::size_t s, double threshold) const {
  std::size_t count = 0;
  for (std::size_t w = 0; w < workloads_.size(); ++w) {
    if (normalized_performance(w, s) <= threshold) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(workloads_.size());
}

double PerfMatrix::fraction_within(const std::string& s, double threshold) const {
  return fraction_within(config_index(s), threshold);
}

PerfMatrix PerfMatrix::subset(const std::vector<std::size_t>& workload_indices) const {
  std::vector<std::string> ws;
  std::vector<double> elapsed;
  ws.reserve(workload_indices.size());
  elapsed.reserve(workload_indices.size() * configs_.size());
  for (std::size_t w : workload_indices) {
    if (w >= workloads_.size()) throw DataError("workload index out of range in subset");
    ws.push_back(workloads_[w]);
    for (std::size_t s = 0; s < configs_.size(); ++s) {
      elapsed.push_back(elapsed_seconds(w, s));
    }
  }
  return PerfMatrix(std::move(ws), configs_, std::move(elapsed), kind_);
}

PerfMatrix load_matrix(std::istream& configs_csv, std::istream& measurements_csv,
                       ObjectiveKind kind) {
  CsvReader configs_reader(configs_csv,
                           "config_id,family,size_tier,vcpus,mem_gb,price_per_hour_usd,ebs_mbps",
                           "configs table");
  std::vector<CloudConfig> configs;
  std::unordered_map<std::string, std::size_t> config_idx;
  std::vector<std::string> fields;
  while (configs_reader.next(fields)) {
    CloudConfig c;
    c.id = trim(fields[0]);
    c.family = family_from_string(trim(fields[1]));
    c.size_tier = trim(fields[2]);
    c.vcpus = static_cast<int>(parse_long(fields[3], configs_reader.location()));
    c.mem_gb = parse_double(fields[4], configs_reader.location());
    c.price_per_hour = parse_double(fields[5], configs_reader.location());
    c.ebs_mbps = parse_double(fields[6], configs_reader.location());
    c.validate();
    if (!config_idx.emplace(c.id, configs.size()).second) {
      throw DataError(configs_reader.location() + ": duplicate config id '" + c.id + "'");
    }
    configs.push_back(std::move(c));
  }
  if (configs.size() < 2) throw DataError("configs table: need at least two configs");

  CsvReader meas_reader(measurements_csv, "workload_id,config_id,elapsed_seconds",
                        "measurements table");
  std::vector<std::string> workloads;  // order of first appearance
  std::unordered_map<std::string, std::size_t> workload_idx;
  struct Cell {
    double value;
    bool present = false;
  };
  std::vector<Cell> cells;  // grows |S| per new workload
  while (meas_reader.next(fields)) {
    const std::string w = trim(fields[0]);
    const std::string s = trim(fields[1]);
    const double elapsed = parse_double(fields[2], meas_reader.location());
    auto sit = config_idx.find(s);
    if (sit == config_idx.end()) {
      throw DataError(meas_reader.location() + ": unknown config id '" + s + "'");
    }
    auto [wit, inserted] = workload_idx.emplace(w, workloads.size());
    if (inserted) {
      workloads.push_back(w);
      cells.resize(cells.size() + configs.size());
    }
    Cell& cell = cells[wit->second * configs.size() + sit->second];
    if (cell.present) {
      throw DataError("duplicate measurement for (" + w + ", " + s + ")");
    }
    if (!(elapsed > 0)) {
      throw DataError(meas_reader.location() + ": elapsed_seconds must be > 0 for (" + w +
                      ", " + s + ")");
    }
    cell.value = elapsed;
    cell.present = true;
  }
  if (workloads.empty()) throw DataError("measurements table: no rows");

  std::vector<double> elapsed;
  elapsed.reserve(cells.size());
  for (std::size_t w = 0; w < workloads.size(); ++w) {
    for (std::size_t s = 0; s < configs.size(); ++s) {
      const Cell& cell = cells[w * configs.size() + s];
      if (!cell.present) {
        throw DataError("incomplete matrix: missing measurement for (" + workloads[w] + ", " +
                        configs[s].id + ")");
      }
      elapsed.push_back(cell.value);
    }
  }
  return PerfMatrix(std::move(workloads), std::move(configs), std::move(elapsed), kind);
}

PerfMatrix load_matrix_files(const std::string& configs_path,
                             const std::string& measurements_path, ObjectiveKind kind) {
  std::ifstream configs(configs_path);
  if (!configs) throw DataError("cannot open " + configs_path);
  std::ifstream measurements(measurements_path);
  if (!measurements) throw DataError("cannot open " + measurements_path);
  return load_matrix(configs, measurements, kind);
}

void write_configs_csv(std::ostream& out, const std::vector<CloudConfig>& configs) {
  out << "config_id,family,size_tier,vcpus,mem_gb,price_per_hour_usd,ebs_mbps\n";
  for (const CloudConfig& c : configs) {
    out << c.id << ',' << to_string(c.family) << ',' << c.size_tier << ',' << c.vcpus << ',';
    format_double(out, c.mem_gb);
    out << ',';
    format_double(out, c.price_per_hour);
    out << ',';
    format_double(out, c.ebs_mbps);
    out << '\n';
  }
}

void write_measurements_csv(std::ostream& out, const PerfMatrix& matrix) {
  out << "workload_id,config_id,elapsed_seconds\n";
  for (std::size_t w = 0; w < matrix.n_workloads(); ++w) {
    for (std::size_t s = 0; s < matrix.n_configs(); ++s) {
      out << matrix.workloads()[w] << ',' << matrix.configs()[s].id << ',';
      format_double(out, matrix.elapsed_seconds(w, s));
      out << '\n';
    }
  }
}

}  // namespace micky
