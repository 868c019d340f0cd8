#pragma once

#include <map>
#include <string>
#include <vector>

#include "inopt/diagnostics.hpp"
#include "inopt/noise.hpp"
#include "inopt/solvers.hpp"
#include "json.hpp"

namespace inopt {

// Flat key=value file with [section] headers and '#' comments.
struct ConfigFile {
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& sec, const std::string& key) const;
  std::string get_str(const std::string& sec, const std::string& key) const;
  std::string get_str(const std::string& sec, const std::string& key,
                      const std::string& fallback) const;
  double get_num(const std::string& sec, const std::string& key) const;
  double get_num(const std::string& sec, const std::string& key, double fallback) const;
  long get_int(const std::string& sec, const std::string& key, long fallback) const;
  bool get_bool(const std::string& sec, const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& sec, const std::string& key) const;
};

ConfigFile parse_config_file(const std::string& path);
ConfigFile parse_config_text(const std::string& text);

// A fully-resolved experiment description.
struct RunConfig {
  nlohmann::json problem_spec;
  SolverKind solver = SolverKind::ipg;
  SolverConfig solver_config;   // noise schedules and iteration budget filled in
  double step_fraction = 0.0;   // used when the explicit step keys are absent
  double theta = 2.0;
  DiagnosticsOptions options;   // eta_summable resolved from the schedules
  bool expect_divergence = false;
  std::string prefix = "run";
};

RunConfig load_run_config(const std::string& path);
RunConfig run_config_from_file(const ConfigFile& file);

}  // namespace inopt
