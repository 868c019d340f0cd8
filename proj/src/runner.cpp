#include "inopt/runner.hpp"

#include <filesystem>
#include <stdexcept>

#include "inopt/errors.hpp"
#include "inopt/problems.hpp"
#include "inopt/trace_io.hpp"

namespace inopt {

namespace {

ProblemFamily family_for_solver(SolverKind k) {
  switch (k) {
    case SolverKind::ipg: return ProblemFamily::composite;
    case SolverKind::ipalm: return ProblemFamily::block;
    case SolverKind::pire: return ProblemFamily::reweighted;
    case SolverKind::idc: return ProblemFamily::dc;
    case SolverKind::iadmm: return ProblemFamily::admm;
  }
  return ProblemFamily::composite;
}

// Schedule feeding the Lyapunov tail sums. The admm scheme aggregates two
// perturbation streams per iterate, so its tails come from the realized
// magnitudes recorded in the trace.
NoiseSchedule lyapunov_schedule(const IterateTrace& trace, const SolverConfig& sc) {
  if (trace.scheme != SolverKind::iadmm) return sc.noise;
  std::vector<double> etas;
  etas.reserve(trace.records.size());
  for (std::size_t n = 1; n < trace.records.size(); ++n)
    etas.push_back(trace.records[n].eta);
  return NoiseSchedule::explicit_list(std::move(etas));
}

NoiseSchedule lyapunov_schedule_from_meta(const nlohmann::json& meta,
                                          const IterateTrace& trace) {
  const nlohmann::json& js = meta.at("schedule");
  if (js.at("kind").get<std::string>() == "from_trace") {
    std::vector<double> etas;
    for (std::size_t n = 1; n < trace.records.size(); ++n)
      etas.push_back(trace.records[n].eta);
    return NoiseSchedule::explicit_list(std::move(etas));
  }
  return schedule_from_json(js);
}

bool clean(const DiagnosticsReport& rep, bool expect_divergence) {
  if (!rep.descent_violations.empty() || !rep.relerr_violations.empty()) return false;
  if (expect_divergence) return rep.verdict == Verdict::diverged;
  return rep.verdict != Verdict::diverged;
}

}  // namespace

void validate_pairing(const RunConfig& config) {
  const std::string kind = config.problem_spec.at("kind").get<std::string>();
  if (family_of_kind(kind) != family_for_solver(config.solver))
    throw ConfigError("config: problem kind '" + kind + "' cannot be paired with solver '" +
                      solver_kind_name(config.solver) + "'");
}

RunArtifacts execute_run(const RunConfig& config, const std::string& out_dir) {
  validate_pairing(config);
  std::filesystem::create_directories(out_dir);

  RunConfig rc = config;
  SolverConfig& sc = rc.solver_config;
  SolverResult result;
  switch (rc.solver) {
    case SolverKind::ipg: {
      CompositeProblem p = composite_from_spec(rc.problem_spec);
      if (sc.h <= 0.0 && rc.step_fraction > 0.0) sc.h = rc.step_fraction / p.f.lipschitz;
      result = run_ipg(p, sc);
      break;
    }
    case SolverKind::ipalm: {
      BlockProblem p = block_from_spec(rc.problem_spec);
      if (sc.gamma <= 0.0 && rc.step_fraction > 0.0) sc.gamma = rc.step_fraction / p.lip_y;
      if (sc.lambda <= 0.0 && rc.step_fraction > 0.0) sc.lambda = rc.step_fraction / p.lip_z;
      result = run_ipalm(p, sc);
      break;
    }
    case SolverKind::pire: {
      ReweightedProblem p = reweighted_from_spec(rc.problem_spec);
      if (sc.mu <= 0.0 && rc.step_fraction > 0.0)
        sc.mu = rc.step_fraction * 2.0 / p.f.lipschitz;
      result = run_pire(p, sc);
      break;
    }
    case SolverKind::idc: {
      DCProblem p = dc_from_spec(rc.problem_spec);
      if (sc.gamma <= 0.0 && rc.step_fraction > 0.0)
        sc.gamma = rc.step_fraction * 2.0 / p.f.lipschitz;
      result = run_idc(p, sc);
      break;
    }
    case SolverKind::iadmm: {
      AdmmProblem p = admm_from_spec(rc.problem_spec);
      result = run_iadmm(p, sc);
      break;
    }
  }

  RunArtifacts art;
  art.trace_path = out_dir + "/" + rc.prefix + "_trace.csv";
  art.report_path = out_dir + "/" + rc.prefix + "_report.json";
  art.meta_path = out_dir + "/" + rc.prefix + "_constants.json";

  LyapunovParams params(rc.theta, result.constants.b);
  NoiseSchedule lyap = lyapunov_schedule(result.trace, sc);
  annotate_lyapunov(result.trace, lyap, params);
  write_trace_csv(art.trace_path, result.trace);

  nlohmann::json meta{
      {"scheme", solver_kind_name(result.trace.scheme)},
      {"constants", constants_to_json(result.constants)},
      {"lyapunov", {{"theta", rc.theta}, {"b", result.constants.b}}},
      {"schedule", result.trace.scheme == SolverKind::iadmm
                       ? nlohmann::json{{"kind", "from_trace"}}
                       : schedule_to_json(sc.noise)},
      {"options",
       {{"rel_tol", rc.options.rel_tol},
        {"window", rc.options.window},
        {"cauchy_tol", rc.options.cauchy_tol},
        {"escape_radius", rc.options.escape_radius},
        {"witness_threshold", rc.options.witness_threshold},
        {"eta_summable", rc.options.eta_summable}}},
      {"expect_divergence", rc.expect_divergence},
      {"problem", rc.problem_spec}};
  write_json_file(art.meta_path, meta);
  art.meta = meta;

  if (result.trace.records.size() >= 2) {
    art.report = full_report(result.trace, result.constants, lyap, params, rc.options);
    write_json_file(art.report_path, report_to_json(art.report));
    art.checks_clean =
        clean(art.report, rc.expect_divergence) && result.trace.status == RunStatus::ok;
  } else {
    art.checks_clean = false;
  }
  art.result = std::move(result);
  return art;
}

DiagnosticsReport reaudit(const std::string& trace_path, const std::string& meta_path,
                          bool* checks_clean) {
  IterateTrace trace = read_trace_csv(trace_path);
  nlohmann::json meta = read_json_file(meta_path);
  LemmaConstants constants;
  DiagnosticsOptions options;
  LyapunovParams params;
  bool expect_divergence = false;
  try {
    trace.scheme = solver_kind_from_name(meta.at("scheme").get<std::string>());
    constants = constants_from_json(meta.at("constants"));
    params = LyapunovParams(meta.at("lyapunov").at("theta").get<double>(),
                            meta.at("lyapunov").at("b").get<double>());
    const auto& jo = meta.at("options");
    options.rel_tol = jo.at("rel_tol").get<double>();
    options.window = jo.at("window").get<int>();
    options.cauchy_tol = jo.at("cauchy_tol").get<double>();
    options.escape_radius = jo.at("escape_radius").get<double>();
    options.witness_threshold = jo.at("witness_threshold").get<double>();
    options.eta_summable = jo.at("eta_summable").get<bool>();
    expect_divergence = meta.at("expect_divergence").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("constants file: ") + e.what());
  }
  NoiseSchedule lyap = lyapunov_schedule_from_meta(meta, trace);
  DiagnosticsReport rep = full_report(trace, constants, lyap, params, options);
  if (checks_clean) *checks_clean = clean(rep, expect_divergence);
  return rep;
}

}  // namespace inopt
