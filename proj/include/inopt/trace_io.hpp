#pragma once

#include <string>

#include "inopt/diagnostics.hpp"
#include "inopt/noise.hpp"
#include "inopt/solvers.hpp"
#include "json.hpp"

namespace inopt {

// Trace CSV. Base columns: k,obj,step_norm,eta,witness_norm,t_k,xi
// Scheme-specific columns are appended (w_min,w_max for the reweighted
// scheme; dual_step,y_step,e1_norm,e2_norm,e2_diff_norm for admm).
// Values are printed with 17 significant digits for lossless round-trips.
void write_trace_csv(const std::string& path, const IterateTrace& trace);
IterateTrace read_trace_csv(const std::string& path);

nlohmann::json schedule_to_json(const NoiseSchedule& s);
NoiseSchedule schedule_from_json(const nlohmann::json& j);

nlohmann::json constants_to_json(const LemmaConstants& c);
LemmaConstants constants_from_json(const nlohmann::json& j);

std::string solver_kind_name(SolverKind k);
SolverKind solver_kind_from_name(const std::string& name);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

std::string format_double(double v);

}  // namespace inopt
