#include "inopt/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "inopt/errors.hpp"

namespace inopt {

namespace {

void require_runnable(const IterateTrace& trace) {
  if (trace.records.size() < 2)
    throw std::invalid_argument("diagnostics: trace must hold at least two records");
}

// Tails of the squared schedule aligned with trace rows: entry n is the sum
// over schedule indices >= start_index + n, so consecutive entries differ by
// exactly the eta consumed between rows n and n+1.
std::vector<double> aligned_tails(const IterateTrace& trace, const NoiseSchedule& schedule) {
  const long updates = static_cast<long>(trace.records.size()) - 1;
  return schedule.tail_sum_sq_series(schedule.start_index,
                                     schedule.start_index + updates - 1);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::diverged: return "diverged";
    case Verdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "converged") return Verdict::converged;
  if (s == "diverged") return Verdict::diverged;
  if (s == "undetermined") return Verdict::undetermined;
  throw SchemaError("unknown verdict: " + s);
}

std::vector<Violation> check_sufficient_descent(const IterateTrace& trace,
                                                const LemmaConstants& constants, double tol) {
  require_runnable(trace);
  std::vector<Violation> out;
  const auto& r = trace.records;
  for (std::size_t n = 1; n < r.size(); ++n) {
    double margin = (r[n - 1].obj - r[n].obj) - constants.a * r[n].step_norm * r[n].step_norm +
                    constants.b * r[n].eta * r[n].eta;
    if (margin < -tol * (1.0 + std::fabs(r[n - 1].obj))) out.push_back({r[n].k, margin});
  }
  return out;
}

std::vector<Violation> check_relative_error(const IterateTrace& trace,
                                            const LemmaConstants& constants, double tol) {
  require_runnable(trace);
  std::vector<Violation> out;
  const auto& r = trace.records;
  for (std::size_t n = 1; n < r.size(); ++n) {
    double window_sum = 0.0;
    std::size_t first = (static_cast<long>(n) - constants.tau >= 1)
                            ? n - static_cast<std::size_t>(constants.tau)
                            : 1;
    for (std::size_t j = first; j <= n; ++j) window_sum += r[j].step_norm;
    double margin = constants.c * window_sum + constants.d * r[n].eta - r[n].witness_norm;
    if (margin < -tol) out.push_back({r[n].k, margin});
  }
  return out;
}

LyapunovCheck check_lyapunov(const IterateTrace& trace, const NoiseSchedule& schedule,
                             const LyapunovParams& params, const LemmaConstants& constants,
                             double tol) {
  require_runnable(trace);
  if (params.b != constants.b)
    throw std::invalid_argument("check_lyapunov: params.b must match the solver constant b");
  LyapunovCheck out;
  if (!schedule.square_summable())
    throw NotSummableError("check_lyapunov: squared schedule is not summable");
  out.applicable = true;

  const auto& r = trace.records;
  const std::vector<double> tails = aligned_tails(trace, schedule);
  out.xi_values.resize(r.size());
  for (std::size_t n = 0; n < r.size(); ++n) {
    double t = std::pow(params.theta * params.b * tails[n], 1.0 / params.theta);
    out.xi_values[n] = xi_value(r[n].obj, t, params.theta);
  }

  out.monotone = true;
  out.worst_margin = std::numeric_limits<double>::infinity();
  out.worst_identity_error = 0.0;
  for (std::size_t n = 0; n + 1 < r.size(); ++n) {
    double drop = out.xi_values[n] - out.xi_values[n + 1];
    double margin = drop - constants.a * r[n + 1].step_norm * r[n + 1].step_norm;
    out.worst_margin = std::min(out.worst_margin, margin);
    if (margin < -tol * (1.0 + std::fabs(out.xi_values[n]))) out.monotone = false;
    double identity = (r[n].obj - r[n + 1].obj) + params.b * r[n + 1].eta * r[n + 1].eta;
    out.worst_identity_error = std::max(out.worst_identity_error, std::fabs(drop - identity));
  }
  return out;
}

FiniteLengthCheck check_finite_length(const IterateTrace& trace, int window, double cauchy_tol,
                                      double escape_radius, double witness_threshold,
                                      bool eta_summable) {
  require_runnable(trace);
  if (window < 1) throw std::invalid_argument("check_finite_length: window must be >= 1");
  if (window >= static_cast<int>(trace.records.size()))
    window = static_cast<int>(trace.records.size()) - 1;
  FiniteLengthCheck out;
  const auto& r = trace.records;
  out.path_length_partial.resize(r.size(), 0.0);
  double acc = 0.0;
  for (std::size_t n = 1; n < r.size(); ++n) {
    acc += r[n].step_norm;
    out.path_length_partial[n] = acc;
  }
  out.tail = acc - out.path_length_partial[r.size() - 1 - static_cast<std::size_t>(window)];
  const double final_witness = r.back().witness_norm;
  if (!eta_summable && acc > escape_radius) {
    out.verdict = Verdict::diverged;
  } else if (out.tail < cauchy_tol && final_witness < witness_threshold &&
             trace.status == RunStatus::ok) {
    out.verdict = Verdict::converged;
  } else {
    out.verdict = Verdict::undetermined;
  }
  return out;
}

DiagnosticsReport full_report(const IterateTrace& trace, const LemmaConstants& constants,
                              const NoiseSchedule& schedule, const LyapunovParams& params,
                              const DiagnosticsOptions& options) {
  require_runnable(trace);
  DiagnosticsReport rep;
  rep.descent_violations = check_sufficient_descent(trace, constants, options.rel_tol);
  rep.relerr_violations = check_relative_error(trace, constants, options.rel_tol);

  const auto& r = trace.records;
  rep.worst_descent_margin = std::numeric_limits<double>::infinity();
  rep.worst_relerr_margin = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < r.size(); ++n) {
    double dm = (r[n - 1].obj - r[n].obj) - constants.a * r[n].step_norm * r[n].step_norm +
                constants.b * r[n].eta * r[n].eta;
    rep.worst_descent_margin = std::min(rep.worst_descent_margin, dm);
    double window_sum = 0.0;
    std::size_t first = (static_cast<long>(n) - constants.tau >= 1)
                            ? n - static_cast<std::size_t>(constants.tau)
                            : 1;
    for (std::size_t j = first; j <= n; ++j) window_sum += r[j].step_norm;
    double rm = constants.c * window_sum + constants.d * r[n].eta - r[n].witness_norm;
    rep.worst_relerr_margin = std::min(rep.worst_relerr_margin, rm);
  }

  if (schedule.square_summable()) {
    LyapunovCheck lc = check_lyapunov(trace, schedule, params, constants, options.rel_tol);
    rep.lyapunov_applicable = true;
    rep.lyapunov_monotone = lc.monotone;
    rep.lyapunov_worst_margin = lc.worst_margin;
    rep.lyapunov_worst_identity_error = lc.worst_identity_error;
  }

  FiniteLengthCheck fl =
      check_finite_length(trace, options.window, options.cauchy_tol, options.escape_radius,
                          options.witness_threshold, options.eta_summable);
  rep.path_length_partial = std::move(fl.path_length_partial);
  rep.tail_path_length = fl.tail;
  rep.final_witness_norm = r.back().witness_norm;
  rep.verdict = fl.verdict;
  rep.eta_summable = options.eta_summable;

  if (trace.scheme == SolverKind::iadmm) {
    int w = std::min<int>(options.window, static_cast<int>(r.size()) - 1);
    double dual_tail = 0.0;
    for (std::size_t n = r.size() - static_cast<std::size_t>(w); n < r.size(); ++n)
      dual_tail += r[n].dual_step;
    rep.dual_step_tail = dual_tail;
  }
  return rep;
}

void annotate_lyapunov(IterateTrace& trace, const NoiseSchedule& schedule,
                       const LyapunovParams& params) {
  if (trace.records.size() < 2) return;
  if (!schedule.square_summable()) {
    for (auto& rec : trace.records) {
      rec.t = std::numeric_limits<double>::quiet_NaN();
      rec.xi = std::numeric_limits<double>::quiet_NaN();
    }
    return;
  }
  const std::vector<double> tails = aligned_tails(trace, schedule);
  for (std::size_t n = 0; n < trace.records.size(); ++n) {
    double t = std::pow(params.theta * params.b * tails[n], 1.0 / params.theta);
    trace.records[n].t = t;
    trace.records[n].xi = xi_value(trace.records[n].obj, t, params.theta);
  }
}

nlohmann::json report_to_json(const DiagnosticsReport& r) {
  nlohmann::json vio_d = nlohmann::json::array();
  for (const auto& v : r.descent_violations) vio_d.push_back({{"k", v.k}, {"margin", v.margin}});
  nlohmann::json vio_r = nlohmann::json::array();
  for (const auto& v : r.relerr_violations) vio_r.push_back({{"k", v.k}, {"margin", v.margin}});
  return nlohmann::json{{"descent_violations", vio_d},
                        {"relerr_violations", vio_r},
                        {"worst_descent_margin", r.worst_descent_margin},
                        {"worst_relerr_margin", r.worst_relerr_margin},
                        {"lyapunov_applicable", r.lyapunov_applicable},
                        {"lyapunov_monotone", r.lyapunov_monotone},
                        {"lyapunov_worst_margin", r.lyapunov_worst_margin},
                        {"lyapunov_worst_identity_error", r.lyapunov_worst_identity_error},
                        {"path_length_partial", r.path_length_partial},
                        {"tail_path_length", r.tail_path_length},
                        {"final_witness_norm", r.final_witness_norm},
                        {"verdict", to_string(r.verdict)},
                        {"eta_summable", r.eta_summable},
                        {"dual_step_tail", r.dual_step_tail}};
}

DiagnosticsReport report_from_json(const nlohmann::json& j) {
  DiagnosticsReport r;
  try {
    for (const auto& v : j.at("descent_violations"))
      r.descent_violations.push_back({v.at("k").get<long>(), v.at("margin").get<double>()});
    for (const auto& v : j.at("relerr_violations"))
      r.relerr_violations.push_back({v.at("k").get<long>(), v.at("margin").get<double>()});
    r.worst_descent_margin = j.at("worst_descent_margin").get<double>();
    r.worst_relerr_margin = j.at("worst_relerr_margin").get<double>();
    r.lyapunov_applicable = j.at("lyapunov_applicable").get<bool>();
    r.lyapunov_monotone = j.at("lyapunov_monotone").get<bool>();
    r.lyapunov_worst_margin = j.at("lyapunov_worst_margin").get<double>();
    r.lyapunov_worst_identity_error = j.at("lyapunov_worst_identity_error").get<double>();
    r.path_length_partial = j.at("path_length_partial").get<std::vector<double>>();
    r.tail_path_length = j.at("tail_path_length").get<double>();
    r.final_witness_norm = j.at("final_witness_norm").get<double>();
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.eta_summable = j.at("eta_summable").get<bool>();
    r.dual_step_tail = j.at("dual_step_tail").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
  return r;
}

}  // namespace inopt
