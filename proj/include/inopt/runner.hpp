#pragma once

#include <string>

#include "inopt/config.hpp"
#include "inopt/diagnostics.hpp"
#include "inopt/solvers.hpp"
#include "json.hpp"

namespace inopt {

struct RunArtifacts {
  SolverResult result;
  DiagnosticsReport report;
  nlohmann::json meta;  // constants + schedule + params + options, as written
  std::string trace_path;
  std::string report_path;
  std::string meta_path;
  bool checks_clean = false;  // no violations and verdict consistent with expectations
};

// Validate the problem/solver pairing of a run config. Throws ConfigError.
void validate_pairing(const RunConfig& config);

// Execute a run end to end: build the problem, resolve step sizes, run the
// solver, annotate the trace, produce the diagnostics report and write the
// three artifacts under out_dir. Files are written even when the run ends in
// numeric failure (partial trace).
RunArtifacts execute_run(const RunConfig& config, const std::string& out_dir);

// Recompute a diagnostics report from stored trace/constants files.
DiagnosticsReport reaudit(const std::string& trace_path, const std::string& meta_path,
                          bool* checks_clean = nullptr);

}  // namespace inopt
