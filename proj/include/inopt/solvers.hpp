#pragma once

#include <vector>

#include "inopt/noise.hpp"
#include "inopt/problems.hpp"
#include "inopt/vec.hpp"

namespace inopt {

enum class SolverKind { ipg, ipalm, pire, idc, iadmm };

enum class RunStatus { ok, numeric_failure };

struct SolverConfig {
  // Step sizes; each scheme reads the ones it needs.
  double h = 0.0;       // ipg
  double gamma = 0.0;   // ipalm y-step, idc
  double lambda = 0.0;  // ipalm z-step
  double mu = 0.0;      // pire
  double admm_alpha = 0.0;
  double admm_beta = 0.0;

  int max_iters = 1000;
  // Early stop once the witness norm drops to this level; 0 disables.
  double stop_tol = 0.0;

  NoiseSchedule noise;
  NoiseSchedule noise2;  // iadmm second perturbation stream

  // Optional start point (stacked state for ipalm/iadmm); zeros otherwise.
  Vec x0;
};

// Constants of the per-iterate inequalities a solver run certifies:
//   obj(k-1) - obj(k)   >= a * step(k)^2 - b * eta(k)^2
//   witness(k)          <= c * sum_{j=k-tau..k} step(j) + d * eta(k)
struct LemmaConstants {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  int tau = 0;
};

struct IterateRecord {
  long k = 0;
  Vec x;  // iterate; (y,z) stacked for ipalm, (x,y,dual) stacked for iadmm
  double obj = 0.0;
  double step_norm = 0.0;
  double eta = 0.0;
  double witness_norm = 0.0;
  double t = 0.0;   // noise-tail surrogate, filled by annotate_lyapunov
  double xi = 0.0;  // obj + t^theta/theta, filled by annotate_lyapunov

  // iadmm extras
  double dual_step = 0.0;
  double y_step = 0.0;
  double e1_norm = 0.0;
  double e2_norm = 0.0;
  double e2_diff_norm = 0.0;

  // pire extras: reweighting values at this iterate
  Vec weights;
  double w_min = 0.0;
  double w_max = 0.0;
};

struct IterateTrace {
  SolverKind scheme = SolverKind::ipg;
  RunStatus status = RunStatus::ok;
  int dimension = 0;
  std::vector<IterateRecord> records;  // records[0] is the start point
};

struct SolverResult {
  IterateTrace trace;
  LemmaConstants constants;
};

SolverResult run_ipg(const CompositeProblem& problem, const SolverConfig& config);
SolverResult run_ipalm(const BlockProblem& problem, const SolverConfig& config);
SolverResult run_pire(const ReweightedProblem& problem, const SolverConfig& config);
SolverResult run_idc(const DCProblem& problem, const SolverConfig& config);
SolverResult run_iadmm(const AdmmProblem& problem, const SolverConfig& config);

}  // namespace inopt
