#include <cmath>

#include "doctest.h"
#include "inopt/diagnostics.hpp"
#include "inopt/errors.hpp"
#include "inopt/problems.hpp"
#include "inopt/solvers.hpp"
#include "oracle_helpers.hpp"

using namespace inopt;

namespace {

SmoothFn quadratic_to(double target) {
  SmoothFn f;
  f.lipschitz = 1.0;
  f.eval = [target](const Vec& x) {
    double s = 0.0;
    for (double v : x) {
      double d = v - target;
      s += d * d;
    }
    return 0.5 * s;
  };
  f.grad = [target](const Vec& x) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] - target;
    return g;
  };
  return f;
}

SmoothFn zero_smooth() {
  SmoothFn f;
  f.lipschitz = 0.0;
  f.eval = [](const Vec&) { return 0.0; };
  f.grad = [](const Vec& x) { return Vec(x.size(), 0.0); };
  return f;
}

bool traces_equal(const IterateTrace& a, const IterateTrace& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t n = 0; n < a.records.size(); ++n) {
    const auto& ra = a.records[n];
    const auto& rb = b.records[n];
    if (ra.obj != rb.obj || ra.step_norm != rb.step_norm || ra.eta != rb.eta ||
        ra.witness_norm != rb.witness_norm)
      return false;
    if (ra.x.size() != rb.x.size()) return false;
    for (std::size_t i = 0; i < ra.x.size(); ++i)
      if (ra.x[i] != rb.x[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ipg linear contraction closed form") {
  Matrix a(1, 1);
  a(0, 0) = 1.0;
  CompositeProblem p = make_least_squares(a, {1.0}, 0.0, RegKind::l1);
  SolverConfig cfg;
  cfg.h = 0.5;
  cfg.max_iters = 50;
  cfg.noise = NoiseSchedule::zero();
  SolverResult res = run_ipg(p, cfg);
  REQUIRE(res.trace.records.size() == 51);
  for (long k = 0; k <= 50; ++k) {
    double expected = 1.0 - std::pow(0.5, static_cast<double>(k));
    CHECK(res.trace.records[static_cast<std::size_t>(k)].x[0] == expected);
  }
  // witness decays geometrically with ratio 1/2
  for (long k = 2; k <= 50; ++k) {
    double w0 = res.trace.records[static_cast<std::size_t>(k - 1)].witness_norm;
    double w1 = res.trace.records[static_cast<std::size_t>(k)].witness_norm;
    CHECK(w1 == doctest::Approx(0.5 * w0).epsilon(1e-12));
  }
  CHECK(res.trace.records.back().witness_norm < 1e-14);
  CHECK(res.constants.a == doctest::Approx(0.25 * (2.0 - p.f.lipschitz)).epsilon(1e-12));
}

TEST_CASE("ipg with non-summable adversarial noise drifts like the partial sums") {
  CompositeProblem p = make_zero_composite(1);
  SolverConfig cfg;
  cfg.h = 0.5;
  cfg.max_iters = 10000;
  cfg.noise = NoiseSchedule::power_law(1.0, 1.0);
  cfg.noise.with_adversarial_positive();
  SolverResult res = run_ipg(p, cfg);
  double plain = 0.0;
  for (long i = 1; i <= 10000; ++i) plain += 1.0 / std::pow(double(i), 1.0);
  CHECK(res.trace.records.back().x[0] == doctest::Approx(plain).epsilon(1e-13));
  CHECK(res.trace.records.back().x[0] >= 8.7);
  // objective is identically zero, every step is pure noise
  for (const auto& r : res.trace.records) CHECK(r.obj == 0.0);
  CHECK(res.trace.records[5].step_norm == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("ipg reaches the noise floor on the regression instance") {
  CompositeProblem p = make_sparse_regression(25, 10, 3, 0.1, RegKind::l1, 7);
  SolverConfig exact;
  exact.h = 0.9 / p.f.lipschitz;
  exact.max_iters = 30000;
  exact.stop_tol = 1e-11;
  exact.noise = NoiseSchedule::zero();
  SolverResult ref = run_ipg(p, exact);
  CHECK(ref.trace.records.back().witness_norm <= 1e-11);
  const Vec xstar = ref.trace.records.back().x;

  SolverConfig noisy = exact;
  noisy.max_iters = 5000;
  noisy.stop_tol = 0.0;
  noisy.noise = NoiseSchedule::power_law(0.1, 2.0);
  noisy.noise.with_random_sphere(11);
  SolverResult res = run_ipg(p, noisy);
  CHECK(res.trace.records.size() == 5001);
  CHECK(res.trace.records.back().witness_norm <= 1e-6);
  CHECK(norm_diff(res.trace.records.back().x, xstar) <= 1e-5);

  SUBCASE("determinism") {
    SolverResult res2 = run_ipg(p, noisy);
    CHECK(traces_equal(res.trace, res2.trace));
  }
}

TEST_CASE("ipg rejects steps at or above the curvature limit") {
  CompositeProblem p = make_sparse_regression(6, 4, 2, 0.1, RegKind::l1, 1);
  SolverConfig cfg;
  cfg.h = 1.0 / p.f.lipschitz;
  cfg.noise = NoiseSchedule::zero();
  CHECK_THROWS_AS(run_ipg(p, cfg), std::invalid_argument);
  cfg.h = -0.1;
  CHECK_THROWS_AS(run_ipg(p, cfg), std::invalid_argument);
}

TEST_CASE("ipg hard-thresholded instance satisfies both inequalities") {
  CompositeProblem p = make_sparse_regression(20, 8, 2, 0.3, RegKind::l0, 17);
  SolverConfig cfg;
  cfg.h = 0.85 / p.f.lipschitz;
  cfg.max_iters = 800;
  cfg.noise = NoiseSchedule::power_law(0.1, 2.0);
  cfg.noise.with_random_sphere(29);
  SolverResult res = run_ipg(p, cfg);
  CHECK(check_sufficient_descent(res.trace, res.constants, 1e-9).empty());
  CHECK(check_relative_error(res.trace, res.constants, 1e-9).empty());
}

TEST_CASE("ipalm two-block toy mirrors the exact alternating map") {
  BlockProblem p;
  p.dim_y = 1;
  p.dim_z = 1;
  p.f = l1_term(0.0);
  p.g = l1_term(0.0);
  p.lip_y = 1.0;
  p.lip_z = 1.0;
  p.lip_joint = std::sqrt(2.0);
  p.coupling.lipschitz = 2.0;
  p.coupling.eval = [](const Vec& x) {
    double d = x[0] - x[1];
    return 0.5 * d * d;
  };
  p.coupling.grad = [](const Vec& x) {
    double d = x[0] - x[1];
    return Vec{d, -d};
  };

  SolverConfig cfg;
  cfg.gamma = 0.4;
  cfg.lambda = 0.4;
  cfg.max_iters = 400;
  cfg.noise = NoiseSchedule::zero();
  cfg.x0 = {1.0, 0.0};
  SolverResult res = run_ipalm(p, cfg);

  // independent fixed-point iteration of the same two maps
  double y = 1.0, z = 0.0;
  for (int k = 0; k < 400; ++k) {
    double gy = y - z;
    y = y - 0.4 * gy + 0.0;
    double gz = -(y - z);
    z = z - 0.4 * gz + 0.0;
  }
  CHECK(res.trace.records.back().x[0] == y);
  CHECK(res.trace.records.back().x[1] == z);
  CHECK(std::fabs(y - z) <= 1e-10);
  CHECK(res.trace.records.back().witness_norm <= 1e-8);
}

TEST_CASE("ipalm consensus run satisfies the descent inequality") {
  BlockProblem p = make_consensus_block(15, 0.1, 0.15, 31);
  SolverConfig cfg;
  cfg.gamma = 0.45;
  cfg.lambda = 0.45;
  cfg.max_iters = 600;
  cfg.noise = NoiseSchedule::power_law(0.1, 2.0);
  cfg.noise.with_random_sphere(12);
  SolverResult res = run_ipalm(p, cfg);
  CHECK(check_sufficient_descent(res.trace, res.constants, 1e-9).empty());
  CHECK(check_relative_error(res.trace, res.constants, 1e-9).empty());
  CHECK_THROWS_AS([&] {
    SolverConfig bad = cfg;
    bad.gamma = 1.0 / p.lip_y;
    run_ipalm(p, bad);
  }(), std::invalid_argument);
}

TEST_CASE("pire log reweighting") {
  ReweightedProblem p;
  p.dimension = 1;
  p.f = quadratic_to(5.0);
  p.g.modulus = 1.0;
  p.g.eval = [](double s) { return std::fabs(s); };
  p.g.prox = [](double v, double tau) { return soft_threshold(v, tau); };
  p.h.lipschitz = 1.0;
  p.h.eval = [](double s) { return std::log1p(s); };
  p.h.deriv = [](double s) { return 1.0 / (1.0 + s); };

  SolverConfig cfg;
  cfg.mu = 0.9;
  cfg.max_iters = 400;
  cfg.noise = NoiseSchedule::zero();
  SolverResult res = run_pire(p, cfg);

  SUBCASE("weights follow the derivative formula") {
    for (const auto& r : res.trace.records) {
      double expected = 1.0 / (1.0 + std::fabs(r.x[0]));
      CHECK(r.weights[0] == expected);
      CHECK(r.w_min == expected);
      CHECK(r.w_max == expected);
      CHECK(r.weights[0] > 0.0);
      CHECK(r.weights[0] <= 1.0);
    }
  }

  SUBCASE("objective decreases monotonically to the grid minimizer") {
    for (std::size_t n = 1; n < res.trace.records.size(); ++n)
      CHECK(res.trace.records[n].obj <= res.trace.records[n - 1].obj + 1e-12);
    double best_x = 0.0, best_val = std::numeric_limits<double>::infinity();
    for (double x = -10.0; x <= 10.0; x += 1e-5) {
      double val = 0.5 * (x - 5.0) * (x - 5.0) + std::log1p(std::fabs(x));
      if (val < best_val) {
        best_val = val;
        best_x = x;
      }
    }
    CHECK(std::fabs(res.trace.records.back().x[0] - best_x) <= 1e-3);
    CHECK(res.trace.records.back().witness_norm <= 1e-8);
    CHECK(check_sufficient_descent(res.trace, res.constants, 1e-9).empty());
  }
}

TEST_CASE("pire with a linear outer function reduces to weighted-l1 ipg") {
  const double weight = 0.3;
  ReweightedProblem rew = make_reweighted_linear(10, weight, 4.0, 5);
  CompositeProblem comp;
  comp.dimension = 10;
  comp.f = rew.f;  // same closures, bitwise-identical evaluations
  comp.g = l1_term(weight);

  NoiseSchedule noise = NoiseSchedule::power_law(0.05, 2.0);
  noise.with_random_sphere(3);
  SolverConfig pire_cfg;
  pire_cfg.mu = 0.9;
  pire_cfg.max_iters = 300;
  pire_cfg.noise = noise;
  SolverConfig ipg_cfg;
  ipg_cfg.h = 0.9;
  ipg_cfg.max_iters = 300;
  ipg_cfg.noise = noise;

  SolverResult a = run_pire(rew, pire_cfg);
  SolverResult b = run_ipg(comp, ipg_cfg);
  CHECK(traces_equal(a.trace, b.trace));
}

TEST_CASE("idc with a vanishing subtracted part reduces to ipg") {
  CompositeProblem comp = make_sparse_regression(12, 8, 3, 0.1, RegKind::l1, 9);
  DCProblem dc;
  dc.dimension = 8;
  dc.f = comp.f;
  dc.g = comp.g;
  dc.h = zero_smooth();

  NoiseSchedule noise = NoiseSchedule::power_law(0.1, 2.0);
  noise.with_random_sphere(14);
  SolverConfig ipg_cfg;
  ipg_cfg.h = 0.9 / comp.f.lipschitz;
  ipg_cfg.max_iters = 400;
  ipg_cfg.noise = noise;
  SolverConfig dc_cfg;
  dc_cfg.gamma = ipg_cfg.h;
  dc_cfg.max_iters = 400;
  dc_cfg.noise = noise;

  SolverResult a = run_idc(dc, dc_cfg);
  SolverResult b = run_ipg(comp, ipg_cfg);
  CHECK(traces_equal(a.trace, b.trace));
}

TEST_CASE("idc accepts steps beyond the composite curvature limit") {
  // subtracted curvature far above the smooth one; the step is legal for the
  // split scheme although it exceeds 1/(L_f + L_h)
  DCProblem p = make_dc_quadratic(4, 4.0, 0.0, true, 0);
  SolverConfig cfg;
  cfg.gamma = 1.5;
  cfg.max_iters = 100;
  cfg.noise = NoiseSchedule::power_law(0.1, 2.0);
  cfg.noise.with_random_sphere(14);
  SolverResult res = run_idc(p, cfg);
  CHECK(res.trace.status == RunStatus::ok);
  CHECK(res.trace.records.size() == 101);
  CHECK(check_sufficient_descent(res.trace, res.constants, 1e-9).empty());
  CHECK(check_relative_error(res.trace, res.constants, 1e-9).empty());
  // the objective is unbounded below along this run
  CHECK(res.trace.records.back().obj < -1e10);

  SUBCASE("longer horizons overflow into a clean numeric-failure status") {
    SolverConfig runaway = cfg;
    runaway.max_iters = 400;
    SolverResult partial = run_idc(p, runaway);
    CHECK(partial.trace.status == RunStatus::numeric_failure);
    CHECK(partial.trace.records.size() >= 2);
    CHECK(partial.trace.records.size() < 401);
  }
}

TEST_CASE("idc zero-noise run lands on the closed-form stationary point") {
  DCProblem p;
  p.dimension = 1;
  p.f = quadratic_to(2.0);
  p.g = l1_term(0.3);
  SmoothFn h;
  h.lipschitz = 0.4;
  h.eval = [](const Vec& x) { return 0.2 * norm_sq(x); };
  h.grad = [](const Vec& x) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 0.4 * x[i];
    return g;
  };
  p.h = h;
  SolverConfig cfg;
  cfg.gamma = 1.2;
  cfg.max_iters = 2000;
  cfg.noise = NoiseSchedule::zero();
  SolverResult res = run_idc(p, cfg);
  // (1 - c) x = target - w on the positive branch
  double xstar = (2.0 - 0.3) / (1.0 - 0.4);
  CHECK(std::fabs(res.trace.records.back().x[0] - xstar) <= 1e-8);
  CHECK(res.trace.records.back().witness_norm <= 1e-8);
}

TEST_CASE("iadmm quadratic split reaches the constrained optimum") {
  AdmmProblem p = make_admm_quadratic(1.0, 1);
  SolverConfig cfg;
  cfg.admm_alpha = 1.0;
  cfg.admm_beta = 4.0;
  cfg.max_iters = 500;
  cfg.noise = NoiseSchedule::zero();
  cfg.noise2 = NoiseSchedule::zero();
  SolverResult res = run_iadmm(p, cfg);
  const auto& last = res.trace.records.back();
  CHECK(std::fabs(last.x[0] + 0.5) <= 1e-8);
  CHECK(std::fabs(last.x[1] - 0.5) <= 1e-8);
  CHECK(std::fabs(last.x[0] + last.x[1]) <= 1e-8);

  // dual increment controlled by the y-step at every iterate
  for (std::size_t n = 1; n < res.trace.records.size(); ++n) {
    const auto& r = res.trace.records[n];
    double lhs = r.dual_step * r.dual_step;
    double rhs = 2.0 * p.g.lipschitz * p.g.lipschitz * r.y_step * r.y_step +
                 2.0 * cfg.admm_beta * cfg.admm_beta * r.e2_diff_norm * r.e2_diff_norm;
    CHECK(lhs <= rhs + 1e-9);
  }
  CHECK(check_sufficient_descent(res.trace, res.constants, 1e-9).empty());
  CHECK(check_relative_error(res.trace, res.constants, 1e-9).empty());
}

TEST_CASE("iadmm rejects parameters below the curvature thresholds") {
  AdmmProblem p = make_admm_quadratic(1.0, 1);
  SolverConfig cfg;
  cfg.admm_alpha = 1.0;
  cfg.admm_beta = 3.8;  // below (2*sqrt(2)+1)*L_g
  cfg.noise = NoiseSchedule::zero();
  cfg.noise2 = NoiseSchedule::zero();
  CHECK_THROWS_AS(run_iadmm(p, cfg), std::invalid_argument);

  AdmmProblem tight = make_admm_quadratic(1.0, 1);
  tight.sigma0 = 0.1;  // forces beta >= 10
  cfg.admm_beta = 5.0;
  CHECK_THROWS_AS(run_iadmm(tight, cfg), std::invalid_argument);

  AdmmProblem nonconvex = make_admm_quadratic(1.0, 1);
  nonconvex.g_convex = false;
  cfg.admm_beta = 4.0;
  CHECK_THROWS_AS(run_iadmm(nonconvex, cfg), std::invalid_argument);

  cfg.admm_alpha = 0.0;
  CHECK_THROWS_AS(run_iadmm(p, cfg), std::invalid_argument);
}

TEST_CASE("witnesses bound the true gradient on smooth-only instances") {
  SUBCASE("ipg") {
    CompositeProblem p;
    p.dimension = 3;
    p.f = quadratic_to(1.5);
    p.g = l1_term(0.0);
    SolverConfig cfg;
    cfg.h = 0.7;
    cfg.max_iters = 60;
    cfg.noise = NoiseSchedule::power_law(0.2, 1.5);
    cfg.noise.with_random_sphere(8);
    SolverResult res = run_ipg(p, cfg);
    for (std::size_t n = 1; n < res.trace.records.size(); ++n) {
      const auto& r = res.trace.records[n];
      CHECK(norm(p.f.grad(r.x)) <= r.witness_norm + 1e-9);
    }
  }
  SUBCASE("idc") {
    DCProblem p;
    p.dimension = 2;
    p.f = quadratic_to(1.0);
    p.g = l1_term(0.0);
    SmoothFn h;
    h.lipschitz = 0.2;
    h.eval = [](const Vec& x) { return 0.1 * norm_sq(x); };
    h.grad = [](const Vec& x) {
      Vec g(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) g[i] = 0.2 * x[i];
      return g;
    };
    p.h = h;
    SolverConfig cfg;
    cfg.gamma = 1.1;
    cfg.max_iters = 60;
    cfg.noise = NoiseSchedule::power_law(0.2, 1.5);
    cfg.noise.with_random_sphere(9);
    SolverResult res = run_idc(p, cfg);
    for (std::size_t n = 1; n < res.trace.records.size(); ++n) {
      const auto& r = res.trace.records[n];
      Vec gf = p.f.grad(r.x), gh = p.h.grad(r.x);
      Vec diff(gf.size());
      for (std::size_t i = 0; i < gf.size(); ++i) diff[i] = gf[i] - gh[i];
      CHECK(norm(diff) <= r.witness_norm + 1e-9);
    }
  }
  SUBCASE("pire") {
    ReweightedProblem p;
    p.dimension = 4;
    p.f = quadratic_to(2.0);
    p.g.modulus = 0.0;
    p.g.eval = [](double) { return 0.0; };
    p.g.prox = [](double v, double) { return v; };
    p.h.lipschitz = 1.0;
    p.h.eval = [](double s) { return std::log1p(s); };
    p.h.deriv = [](double s) { return 1.0 / (1.0 + s); };
    SolverConfig cfg;
    cfg.mu = 0.8;
    cfg.max_iters = 60;
    cfg.noise = NoiseSchedule::power_law(0.2, 1.5);
    cfg.noise.with_random_sphere(10);
    SolverResult res = run_pire(p, cfg);
    for (std::size_t n = 1; n < res.trace.records.size(); ++n) {
      const auto& r = res.trace.records[n];
      CHECK(norm(p.f.grad(r.x)) <= r.witness_norm + 1e-9);
    }
  }
  SUBCASE("ipalm") {
    BlockProblem p;
    p.dim_y = 1;
    p.dim_z = 1;
    p.f = l1_term(0.0);
    p.g = l1_term(0.0);
    p.lip_y = 1.0;
    p.lip_z = 1.0;
    p.lip_joint = std::sqrt(2.0);
    p.coupling.lipschitz = 2.0;
    p.coupling.eval = [](const Vec& x) {
      double d = x[0] - x[1] - 0.7;
      return 0.5 * d * d;
    };
    p.coupling.grad = [](const Vec& x) {
      double d = x[0] - x[1] - 0.7;
      return Vec{d, -d};
    };
    SolverConfig cfg;
    cfg.gamma = 0.45;
    cfg.lambda = 0.45;
    cfg.max_iters = 60;
    cfg.noise = NoiseSchedule::power_law(0.2, 1.5);
    cfg.noise.with_random_sphere(11);
    cfg.x0 = {1.0, -1.0};
    SolverResult res = run_ipalm(p, cfg);
    for (std::size_t n = 1; n < res.trace.records.size(); ++n) {
      const auto& r = res.trace.records[n];
      CHECK(norm(p.coupling.grad(r.x)) <= r.witness_norm + 1e-9);
    }
  }
  SUBCASE("iadmm") {
    AdmmProblem p = make_admm_quadratic(1.0, 2);
    const double beta = 4.0;
    SolverConfig cfg;
    cfg.admm_alpha = 1.0;
    cfg.admm_beta = beta;
    cfg.max_iters = 60;
    cfg.noise = NoiseSchedule::power_law(0.1, 2.0);
    cfg.noise.with_random_sphere(15);
    cfg.noise2 = NoiseSchedule::power_law(0.1, 2.0);
    cfg.noise2.with_random_sphere(16);
    SolverResult res = run_iadmm(p, cfg);
    for (std::size_t n = 1; n < res.trace.records.size(); ++n) {
      const auto& r = res.trace.records[n];
      Vec xx(r.x.begin(), r.x.begin() + 2);
      Vec yy(r.x.begin() + 2, r.x.begin() + 4);
      Vec dd(r.x.begin() + 4, r.x.end());
      Vec gy = p.g.grad(yy);
      double s = 0.0;
      for (int i = 0; i < 2; ++i) {
        double resid = xx[i] + yy[i];
        double gx = xx[i] + dd[i] + beta * resid;  // grad of 0.5||x||^2 term
        double gyy = gy[i] + dd[i] + beta * resid;
        s += gx * gx + gyy * gyy + resid * resid;
      }
      CHECK(std::sqrt(s) <= r.witness_norm + 1e-9);
    }
  }
}

TEST_CASE("early stop on the witness norm") {
  CompositeProblem p = make_sparse_regression(25, 10, 3, 0.1, RegKind::l1, 7);
  SolverConfig cfg;
  cfg.h = 0.9 / p.f.lipschitz;
  cfg.max_iters = 30000;
  cfg.stop_tol = 1e-8;
  cfg.noise = NoiseSchedule::zero();
  SolverResult res = run_ipg(p, cfg);
  CHECK(res.trace.records.size() < 30001);
  CHECK(res.trace.records.back().witness_norm <= 1e-8);
}

TEST_CASE("all schemes are deterministic under identical configs") {
  {
    BlockProblem p = make_consensus_block(6, 0.1, 0.15, 31);
    SolverConfig cfg;
    cfg.gamma = 0.45;
    cfg.lambda = 0.45;
    cfg.max_iters = 120;
    cfg.noise = NoiseSchedule::power_law(0.1, 2.0);
    cfg.noise.with_random_sphere(12);
    CHECK(traces_equal(run_ipalm(p, cfg).trace, run_ipalm(p, cfg).trace));
  }
  {
    ReweightedProblem p = make_reweighted_log(8, 0.5, 5.0, 21);
    SolverConfig cfg;
    cfg.mu = 0.9;
    cfg.max_iters = 120;
    cfg.noise = NoiseSchedule::power_law(0.1, 2.0);
    cfg.noise.with_random_sphere(13);
    CHECK(traces_equal(run_pire(p, cfg).trace, run_pire(p, cfg).trace));
  }
  {
    DCProblem p = make_dc_quadratic(6, 0.3, 0.05, false, 41);
    SolverConfig cfg;
    cfg.gamma = 1.5;
    cfg.max_iters = 120;
    cfg.noise = NoiseSchedule::power_law(0.1, 2.0);
    cfg.noise.with_random_sphere(14);
    CHECK(traces_equal(run_idc(p, cfg).trace, run_idc(p, cfg).trace));
  }
  {
    AdmmProblem p = make_admm_quadratic(1.0, 2);
    SolverConfig cfg;
    cfg.admm_alpha = 1.0;
    cfg.admm_beta = 4.0;
    cfg.max_iters = 120;
    cfg.noise = NoiseSchedule::power_law(0.1, 2.0);
    cfg.noise.with_random_sphere(15);
    cfg.noise2 = NoiseSchedule::power_law(0.1, 2.0);
    cfg.noise2.with_random_sphere(16);
    CHECK(traces_equal(run_iadmm(p, cfg).trace, run_iadmm(p, cfg).trace));
  }
}

TEST_CASE("pire and idc step ranges") {
  ReweightedProblem rew = make_reweighted_log(4, 0.5, 3.0, 1);
  SolverConfig cfg;
  cfg.mu = 2.0 / rew.f.lipschitz;  // exactly at the limit
  cfg.noise = NoiseSchedule::zero();
  CHECK_THROWS_AS(run_pire(rew, cfg), std::invalid_argument);

  DCProblem dc = make_dc_quadratic(4, 0.3, 0.0, false, 1);
  SolverConfig dcfg;
  dcfg.gamma = 2.0 / dc.f.lipschitz;
  dcfg.noise = NoiseSchedule::zero();
  CHECK_THROWS_AS(run_idc(dc, dcfg), std::invalid_argument);
}

TEST_CASE("pire reports broken reweighting positivity") {
  // outer derivative turns negative once the argument passes 1
  ReweightedProblem p;
  p.dimension = 1;
  p.f = quadratic_to(6.0);
  p.g.modulus = 1.0;
  p.g.eval = [](double s) { return std::fabs(s); };
  p.g.prox = [](double v, double tau) { return soft_threshold(v, tau); };
  p.h.lipschitz = 1.0;
  p.h.eval = [](double s) { return s - 0.5 * s * s; };
  p.h.deriv = [](double s) { return 1.0 - s; };
  SolverConfig cfg;
  cfg.mu = 0.9;
  cfg.max_iters = 50;
  cfg.noise = NoiseSchedule::zero();
  CHECK_THROWS_AS(run_pire(p, cfg), NumericError);
}

TEST_CASE("ipalm with unequal block dimensions") {
  // coupling 0.5*||By - z||^2 with B = [[1,0],[0,1],[1,1]]
  BlockProblem p;
  p.dim_y = 2;
  p.dim_z = 3;
  p.f = l1_term(0.1);
  p.g = l1_term(0.1);
  auto by = [](const Vec& y) { return Vec{y[0], y[1], y[0] + y[1]}; };
  p.coupling.eval = [by](const Vec& x) {
    Vec r = by({x[0], x[1]});
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
      double d = r[j] - x[2 + j];
      s += d * d;
    }
    return 0.5 * s;
  };
  p.coupling.grad = [by](const Vec& x) {
    Vec r = by({x[0], x[1]});
    Vec d(3);
    for (int j = 0; j < 3; ++j) d[j] = r[j] - x[2 + j];
    return Vec{d[0] + d[2], d[1] + d[2], -d[0], -d[1], -d[2]};
  };
  p.lip_y = 3.0;                  // lmax of B^T B
  p.lip_z = 1.0;
  p.lip_joint = std::sqrt(12.0);  // joint constant of the y-part
  p.coupling.lipschitz = 4.0;     // full gradient constant

  SolverConfig cfg;
  cfg.gamma = 0.3;
  cfg.lambda = 0.9;
  cfg.max_iters = 400;
  cfg.noise = NoiseSchedule::power_law(0.1, 2.0);
  cfg.noise.with_random_sphere(77);
  cfg.x0 = {1.0, -2.0, 0.5, 0.0, 3.0};
  SolverResult res = run_ipalm(p, cfg);
  CHECK(res.trace.status == RunStatus::ok);
  CHECK(check_sufficient_descent(res.trace, res.constants, 1e-9).empty());
  CHECK(check_relative_error(res.trace, res.constants, 1e-9).empty());
  CHECK(check_gradient(p.coupling, {0.3, -0.7, 1.1, 0.2, -0.4}, 1e-5) <= 1e-5);
  CHECK(res.trace.records.back().witness_norm < 1e-4);
}

TEST_CASE("schedules with shifted start indices stay aligned") {
  Matrix a(1, 1);
  a(0, 0) = 1.0;
  CompositeProblem p = make_least_squares(a, {1.0}, 0.0, RegKind::l1);
  SolverConfig cfg;
  cfg.h = 0.5;
  cfg.max_iters = 10;
  cfg.noise = NoiseSchedule::power_law(1.0, 3.0);
  cfg.noise.start_index = 3;
  cfg.noise.with_adversarial_positive();
  SolverResult res = run_ipg(p, cfg);
  CHECK(res.trace.records[1].eta == 1.0 / 27.0);
  CHECK(res.trace.records[2].eta == 1.0 / 64.0);

  LyapunovParams params(2.0, res.constants.b);
  LyapunovCheck lc = check_lyapunov(res.trace, cfg.noise, params, res.constants, 1e-9);
  CHECK(lc.monotone);
  CHECK(lc.worst_identity_error <= 1e-10);
}
