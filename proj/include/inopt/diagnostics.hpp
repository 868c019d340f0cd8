#pragma once

#include <string>
#include <vector>

#include "inopt/noise.hpp"
#include "inopt/solvers.hpp"
#include "json.hpp"

namespace inopt {

// Sign convention: margin >= 0 means the inequality held at that iterate.
struct Violation {
  long k = 0;
  double margin = 0.0;
};

enum class Verdict { converged, diverged, undetermined };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct LyapunovCheck {
  bool applicable = false;  // false when the squared schedule is not summable
  bool monotone = false;
  double worst_margin = 0.0;
  double worst_identity_error = 0.0;
  std::vector<double> xi_values;
};

struct FiniteLengthCheck {
  Verdict verdict = Verdict::undetermined;
  std::vector<double> path_length_partial;
  double tail = 0.0;
};

struct DiagnosticsOptions {
  double rel_tol = 1e-9;
  int window = 100;
  double cauchy_tol = 1e-6;
  double escape_radius = 1e6;
  double witness_threshold = 1e-4;
  bool eta_summable = true;
};

struct DiagnosticsReport {
  std::vector<Violation> descent_violations;
  std::vector<Violation> relerr_violations;
  double worst_descent_margin = 0.0;
  double worst_relerr_margin = 0.0;
  bool lyapunov_applicable = false;
  bool lyapunov_monotone = false;
  double lyapunov_worst_margin = 0.0;
  double lyapunov_worst_identity_error = 0.0;
  std::vector<double> path_length_partial;
  double tail_path_length = 0.0;
  double final_witness_norm = 0.0;
  Verdict verdict = Verdict::undetermined;
  // Informational: whether the magnitude series is summable, and (iadmm) the
  // trailing dual path length, mirroring the step/dual coupling of the state.
  bool eta_summable = true;
  double dual_step_tail = 0.0;
};

// obj(k-1) - obj(k) >= a*step(k)^2 - b*eta(k)^2, relative tolerance `tol`.
std::vector<Violation> check_sufficient_descent(const IterateTrace& trace,
                                                const LemmaConstants& constants, double tol);

// witness(k) <= c * sum_{j=max(1,k-tau)}^{k} step(j) + d*eta(k), absolute
// tolerance `tol`. The window truncates at the first step.
std::vector<Violation> check_relative_error(const IterateTrace& trace,
                                            const LemmaConstants& constants, double tol);

// Monotonicity of xi(k) = obj(k) + t(k)^theta/theta along the trace, plus the
// exact successive-difference identity xi(k) - xi(k+1) = dObj + b*eta(k+1)^2.
// Requires params.b == constants.b.
LyapunovCheck check_lyapunov(const IterateTrace& trace, const NoiseSchedule& schedule,
                             const LyapunovParams& params, const LemmaConstants& constants,
                             double tol);

FiniteLengthCheck check_finite_length(const IterateTrace& trace, int window, double cauchy_tol,
                                      double escape_radius, double witness_threshold,
                                      bool eta_summable);

DiagnosticsReport full_report(const IterateTrace& trace, const LemmaConstants& constants,
                              const NoiseSchedule& schedule, const LyapunovParams& params,
                              const DiagnosticsOptions& options);

// Fill the t/xi columns of a trace from the schedule tails. No-op values
// (NaN) when the squared schedule is not summable.
void annotate_lyapunov(IterateTrace& trace, const NoiseSchedule& schedule,
                       const LyapunovParams& params);

nlohmann::json report_to_json(const DiagnosticsReport& r);
DiagnosticsReport report_from_json(const nlohmann::json& j);

}  // namespace inopt
