#include "inopt/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "inopt/errors.hpp"

namespace inopt {

namespace {

Vec start_point(const SolverConfig& cfg, int dim, const char* scheme) {
  if (cfg.x0.empty()) return Vec(static_cast<std::size_t>(dim), 0.0);
  if (static_cast<int>(cfg.x0.size()) != dim)
    throw std::invalid_argument(std::string(scheme) + ": x0 dimension mismatch");
  return cfg.x0;
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

IterateRecord start_record(Vec x, double obj) {
  IterateRecord r;
  r.k = 0;
  r.x = std::move(x);
  r.obj = obj;
  return r;
}

bool record_finite(const IterateRecord& r) {
  return std::isfinite(r.obj) && std::isfinite(r.step_norm) && std::isfinite(r.witness_norm) &&
         all_finite(r.x);
}

}  // namespace

SolverResult run_ipg(const CompositeProblem& problem, const SolverConfig& cfg) {
  const double h = cfg.h;
  const double lip = problem.f.lipschitz;
  require(cfg.max_iters >= 1, "ipg: max_iters must be >= 1");
  require(h > 0.0 && h * lip < 1.0, "ipg: step must satisfy 0 < h < 1/L");

  const int dim = problem.dimension;
  Vec x = start_point(cfg, dim, "ipg");

  SolverResult out;
  out.trace.scheme = SolverKind::ipg;
  out.trace.dimension = dim;
  out.constants = {0.25 * (1.0 / h - lip), 1.0 / (h * (1.0 - h * lip)), 1.0 / h + lip, 1.0 / h, 0};
  out.trace.records.push_back(start_record(x, problem.f.eval(x) + problem.g.eval(x)));

  Vec gx = problem.f.grad(x);
  Vec v(static_cast<std::size_t>(dim)), wit(static_cast<std::size_t>(dim));
  for (long n = 1; n <= cfg.max_iters; ++n) {
    const long sidx = cfg.noise.start_index + n - 1;
    const Vec e = cfg.noise.draw(sidx, dim);
    for (int i = 0; i < dim; ++i) v[i] = x[i] - h * gx[i] + e[i];
    Vec xn = problem.g.prox(v, h);
    Vec gxn = problem.f.grad(xn);

    IterateRecord rec;
    rec.k = n;
    rec.obj = problem.f.eval(xn) + problem.g.eval(xn);
    rec.step_norm = norm_diff(xn, x);
    rec.eta = cfg.noise.eta(sidx);
    for (int i = 0; i < dim; ++i) wit[i] = (x[i] - xn[i]) / h + gxn[i] - gx[i] + e[i] / h;
    rec.witness_norm = norm(wit);
    rec.x = xn;
    if (!record_finite(rec)) {
      out.trace.status = RunStatus::numeric_failure;
      return out;
    }
    out.trace.records.push_back(std::move(rec));
    x = std::move(xn);
    gx = std::move(gxn);
    if (cfg.stop_tol > 0.0 && out.trace.records.back().witness_norm <= cfg.stop_tol) break;
  }
  return out;
}

SolverResult run_ipalm(const BlockProblem& problem, const SolverConfig& cfg) {
  const double gamma = cfg.gamma;
  const double lambda = cfg.lambda;
  require(cfg.max_iters >= 1, "ipalm: max_iters must be >= 1");
  require(gamma > 0.0 && gamma * problem.lip_y < 1.0,
          "ipalm: y-step must satisfy 0 < gamma < 1/M");
  require(lambda > 0.0 && lambda * problem.lip_z < 1.0,
          "ipalm: z-step must satisfy 0 < lambda < 1/N");

  const int dy = problem.dim_y;
  const int dz = problem.dim_z;
  const int dim = dy + dz;
  Vec state = start_point(cfg, dim, "ipalm");
  Vec y(state.begin(), state.begin() + dy);
  Vec z(state.begin() + dy, state.end());

  const double nu = std::min(0.25 * (1.0 / gamma - problem.lip_y),
                             0.25 * (1.0 / lambda - problem.lip_z));
  const double sigma = std::max(1.0 / (gamma * (1.0 - gamma * problem.lip_y)),
                                1.0 / (lambda * (1.0 - lambda * problem.lip_z)));
  const double big_s = 1.0 / lambda + 1.0 / gamma + 2.0 * problem.lip_joint;
  const double big_d = std::sqrt(1.0 / (gamma * gamma) + 1.0 / (lambda * lambda));

  SolverResult out;
  out.trace.scheme = SolverKind::ipalm;
  out.trace.dimension = dim;
  out.constants = {nu, sigma, big_s, big_d, 0};

  auto stacked = [&](const Vec& yy, const Vec& zz) {
    Vec s(yy);
    s.insert(s.end(), zz.begin(), zz.end());
    return s;
  };
  auto objective = [&](const Vec& yy, const Vec& zz, const Vec& yz) {
    return problem.f.eval(yy) + problem.coupling.eval(yz) + problem.g.eval(zz);
  };

  Vec yz = stacked(y, z);
  out.trace.records.push_back(start_record(yz, objective(y, z, yz)));

  for (long n = 1; n <= cfg.max_iters; ++n) {
    const long sidx = cfg.noise.start_index + n - 1;
    const Vec e = cfg.noise.draw(sidx, dim);

    Vec grad_old = problem.coupling.grad(yz);  // at (y, z)
    Vec vy(static_cast<std::size_t>(dy));
    for (int i = 0; i < dy; ++i) vy[i] = y[i] - gamma * grad_old[i] + e[i];
    Vec yn = problem.f.prox(vy, gamma);

    Vec mid = stacked(yn, z);
    Vec grad_mid = problem.coupling.grad(mid);  // at (y', z)
    Vec vz(static_cast<std::size_t>(dz));
    for (int i = 0; i < dz; ++i) vz[i] = z[i] - lambda * grad_mid[dy + i] + e[dy + i];
    Vec zn = problem.g.prox(vz, lambda);

    Vec yzn = stacked(yn, zn);
    Vec grad_new = problem.coupling.grad(yzn);

    IterateRecord rec;
    rec.k = n;
    rec.obj = objective(yn, zn, yzn);
    rec.eta = cfg.noise.eta(sidx);
    double step_sq = 0.0;
    Vec wit(static_cast<std::size_t>(dim));
    for (int i = 0; i < dy; ++i) {
      double d = yn[i] - y[i];
      step_sq += d * d;
      wit[i] = (y[i] - yn[i]) / gamma + grad_new[i] - grad_old[i] + e[i] / gamma;
    }
    for (int i = 0; i < dz; ++i) {
      double d = zn[i] - z[i];
      step_sq += d * d;
      wit[dy + i] =
          (z[i] - zn[i]) / lambda + grad_new[dy + i] - grad_mid[dy + i] + e[dy + i] / lambda;
    }
    rec.step_norm = std::sqrt(step_sq);
    rec.witness_norm = norm(wit);
    rec.x = yzn;
    if (!record_finite(rec)) {
      out.trace.status = RunStatus::numeric_failure;
      return out;
    }
    out.trace.records.push_back(std::move(rec));
    y = std::move(yn);
    z = std::move(zn);
    yz = std::move(yzn);
    if (cfg.stop_tol > 0.0 && out.trace.records.back().witness_norm <= cfg.stop_tol) break;
  }
  return out;
}

SolverResult run_pire(const ReweightedProblem& problem, const SolverConfig& cfg) {
  const double mu = cfg.mu;
  const double lf = problem.f.lipschitz;
  require(cfg.max_iters >= 1, "pire: max_iters must be >= 1");
  require(mu > 0.0 && mu * lf < 2.0, "pire: step must satisfy 0 < mu < 2/L_f");

  const int dim = problem.dimension;
  Vec x = start_point(cfg, dim, "pire");

  SolverResult out;
  out.trace.scheme = SolverKind::pire;
  out.trace.dimension = dim;
  out.constants.a = 0.5 * (1.0 / mu - 0.5 * lf);
  out.constants.b = 1.0 / (mu * (2.0 - mu * lf));
  out.constants.tau = 0;

  auto weights_at = [&](const Vec& p) {
    Vec w(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      w[i] = problem.h.deriv(problem.g.eval(p[i]));
      if (!(w[i] > 0.0))
        throw NumericError("pire: nonpositive reweighting value encountered");
    }
    return w;
  };
  auto objective = [&](const Vec& p) {
    double s = 0.0;
    for (double v : p) s += problem.h.eval(problem.g.eval(v));
    return problem.f.eval(p) + s;
  };
  auto fill_weight_stats = [](IterateRecord& r) {
    r.w_min = *std::min_element(r.weights.begin(), r.weights.end());
    r.w_max = *std::max_element(r.weights.begin(), r.weights.end());
  };

  Vec w = weights_at(x);
  {
    IterateRecord r0 = start_record(x, objective(x));
    r0.weights = w;
    fill_weight_stats(r0);
    out.trace.records.push_back(std::move(r0));
  }

  Vec gx = problem.f.grad(x);
  double delta = out.trace.records[0].w_min;
  double pi = out.trace.records[0].w_max;
  double grad_bound = 0.0;
  for (double v : gx) grad_bound = std::max(grad_bound, std::fabs(v));

  Vec v(static_cast<std::size_t>(dim)), wit(static_cast<std::size_t>(dim));
  for (long n = 1; n <= cfg.max_iters; ++n) {
    const long sidx = cfg.noise.start_index + n - 1;
    const Vec e = cfg.noise.draw(sidx, dim);
    Vec xn(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      v[i] = x[i] - mu * gx[i] + e[i];
      xn[i] = problem.g.prox(v[i], mu * w[i]);
    }
    Vec wn = weights_at(xn);
    Vec gxn = problem.f.grad(xn);

    IterateRecord rec;
    rec.k = n;
    rec.obj = objective(xn);
    rec.step_norm = norm_diff(xn, x);
    rec.eta = cfg.noise.eta(sidx);
    // Element of the composite subdifferential at the new point: the prox
    // optimality condition gives the inner subgradient, rescaled by the
    // ratio of consecutive weights.
    for (int i = 0; i < dim; ++i) {
      double r = wn[i] / w[i];
      wit[i] = ((x[i] - xn[i]) / mu) * r + gxn[i] - gx[i] * r + (e[i] / mu) * r;
    }
    rec.witness_norm = norm(wit);
    rec.weights = wn;
    fill_weight_stats(rec);
    rec.x = xn;
    if (!record_finite(rec)) {
      out.trace.status = RunStatus::numeric_failure;
      break;
    }
    delta = std::min(delta, rec.w_min);
    pi = std::max(pi, rec.w_max);
    for (double gv : gxn) grad_bound = std::max(grad_bound, std::fabs(gv));
    out.trace.records.push_back(std::move(rec));
    x = std::move(xn);
    gx = std::move(gxn);
    w = std::move(wn);
    if (cfg.stop_tol > 0.0 && out.trace.records.back().witness_norm <= cfg.stop_tol) break;
  }

  // Relative-error constants from the realized weight range and gradient
  // bound over the trace.
  const double root_n = std::sqrt(static_cast<double>(dim));
  out.constants.c = grad_bound * problem.h.lipschitz * problem.g.modulus * root_n / delta +
                    pi * root_n / (mu * delta);
  out.constants.d = pi * root_n / (mu * delta);
  return out;
}

SolverResult run_idc(const DCProblem& problem, const SolverConfig& cfg) {
  const double gamma = cfg.gamma;
  const double lf = problem.f.lipschitz;
  const double lh = problem.h.lipschitz;
  require(cfg.max_iters >= 1, "idc: max_iters must be >= 1");
  require(gamma > 0.0 && gamma * lf < 2.0, "idc: step must satisfy 0 < gamma < 2/L_f");

  const int dim = problem.dimension;
  Vec x = start_point(cfg, dim, "idc");

  SolverResult out;
  out.trace.scheme = SolverKind::idc;
  out.trace.dimension = dim;
  out.constants = {0.5 * (1.0 / gamma - 0.5 * lf), 1.0 / (gamma * (2.0 - gamma * lf)),
                   1.0 / gamma + lf + lh, 1.0 / gamma, 0};

  auto objective = [&](const Vec& p) {
    return problem.f.eval(p) + problem.g.eval(p) - problem.h.eval(p);
  };
  out.trace.records.push_back(start_record(x, objective(x)));

  Vec gf = problem.f.grad(x);
  Vec gh = problem.h.grad(x);
  Vec v(static_cast<std::size_t>(dim)), wit(static_cast<std::size_t>(dim));
  for (long n = 1; n <= cfg.max_iters; ++n) {
    const long sidx = cfg.noise.start_index + n - 1;
    const Vec e = cfg.noise.draw(sidx, dim);
    for (int i = 0; i < dim; ++i) {
      double gd = gf[i] - gh[i];
      v[i] = x[i] - gamma * gd + e[i];
    }
    Vec xn = problem.g.prox(v, gamma);
    Vec gfn = problem.f.grad(xn);
    Vec ghn = problem.h.grad(xn);

    IterateRecord rec;
    rec.k = n;
    rec.obj = objective(xn);
    rec.step_norm = norm_diff(xn, x);
    rec.eta = cfg.noise.eta(sidx);
    for (int i = 0; i < dim; ++i)
      wit[i] = (x[i] - xn[i]) / gamma + gfn[i] - gf[i] + e[i] / gamma + (gh[i] - ghn[i]);
    rec.witness_norm = norm(wit);
    rec.x = xn;
    if (!record_finite(rec)) {
      out.trace.status = RunStatus::numeric_failure;
      return out;
    }
    out.trace.records.push_back(std::move(rec));
    x = std::move(xn);
    gf = std::move(gfn);
    gh = std::move(ghn);
    if (cfg.stop_tol > 0.0 && out.trace.records.back().witness_norm <= cfg.stop_tol) break;
  }
  return out;
}

SolverResult run_iadmm(const AdmmProblem& problem, const SolverConfig& cfg) {
  const double alpha = cfg.admm_alpha;
  const double beta = cfg.admm_beta;
  const double lg = problem.g.lipschitz;
  require(cfg.max_iters >= 1, "iadmm: max_iters must be >= 1");
  require(alpha > 0.0, "iadmm: alpha must be positive");
  require(beta > (2.0 * std::sqrt(2.0) + 1.0) * lg,
          "iadmm: beta must exceed (2*sqrt(2)+1)*L_g");
  require(problem.sigma0 > 0.0 && beta >= 1.0 / problem.sigma0,
          "iadmm: beta must be at least 1/sigma0");
  require(problem.g_convex, "iadmm: smooth part of the split must be convex");

  const int dim = problem.dimension;
  Vec state = start_point(cfg, 3 * dim, "iadmm");
  Vec x(state.begin(), state.begin() + dim);
  Vec y(state.begin() + dim, state.begin() + 2 * dim);
  Vec dual(state.begin() + 2 * dim, state.end());
  if (cfg.x0.empty()) {
    // Multiplier consistent with the y-block optimality, so the dual-step
    // bound holds from the first iterate on.
    Vec gy = problem.g.grad(y);
    for (int i = 0; i < dim; ++i) dual[i] = -gy[i];
  }

  const double rho1 = 2.0 * lg * lg;
  const double rho2 = 2.0 * beta * beta;
  const double nu = std::min(0.25 * alpha, 0.25 * (beta - lg) - rho1 / beta);
  const double rho = std::max({(alpha + beta) * (alpha + beta) / alpha,
                               beta * beta / (beta - lg), rho2 / beta});
  const double big_s = std::max(alpha, beta) + (beta + std::sqrt(rho1)) + std::sqrt(rho1) / beta;
  const double big_d =
      (alpha + beta) + std::max(std::sqrt(rho2), beta) + std::sqrt(rho2) / beta;

  SolverResult out;
  out.trace.scheme = SolverKind::iadmm;
  out.trace.dimension = 3 * dim;
  out.constants = {nu, rho, big_s, big_d, 0};

  auto lagrangian = [&](const Vec& xx, const Vec& yy, const Vec& dd) {
    double lin = 0.0, quad = 0.0;
    for (int i = 0; i < dim; ++i) {
      double r = xx[i] + yy[i];
      lin += dd[i] * r;
      quad += r * r;
    }
    return problem.f.eval(xx) + problem.g.eval(yy) + lin + 0.5 * beta * quad;
  };
  auto stacked = [&](const Vec& xx, const Vec& yy, const Vec& dd) {
    Vec s(xx);
    s.insert(s.end(), yy.begin(), yy.end());
    s.insert(s.end(), dd.begin(), dd.end());
    return s;
  };

  out.trace.records.push_back(start_record(stacked(x, y, dual), lagrangian(x, y, dual)));

  Vec e2_prev(static_cast<std::size_t>(dim), 0.0);
  Vec vx(static_cast<std::size_t>(dim)), vy(static_cast<std::size_t>(dim));
  for (long n = 1; n <= cfg.max_iters; ++n) {
    const long s1 = cfg.noise.start_index + n - 1;
    const long s2 = cfg.noise2.start_index + n - 1;
    const Vec e1 = cfg.noise.draw(s1, dim);
    const Vec e2 = cfg.noise2.draw(s2, dim);

    for (int i = 0; i < dim; ++i)
      vx[i] = (alpha * x[i] - beta * y[i] - dual[i]) / (alpha + beta) + e1[i];
    Vec xn = problem.f.prox(vx, 1.0 / (alpha + beta));

    for (int i = 0; i < dim; ++i) vy[i] = -xn[i] - dual[i] / beta + e2[i];
    Vec yn = problem.g_prox(vy, 1.0 / beta);

    Vec dualn(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) dualn[i] = dual[i] + beta * (xn[i] + yn[i]);

    IterateRecord rec;
    rec.k = n;
    rec.obj = lagrangian(xn, yn, dualn);
    double step_sq = 0.0, ystep_sq = 0.0, dstep_sq = 0.0, ediff_sq = 0.0;
    for (int i = 0; i < dim; ++i) {
      double dx = xn[i] - x[i];
      double dy = yn[i] - y[i];
      double dd = dualn[i] - dual[i];
      double de = e2[i] - e2_prev[i];
      step_sq += dx * dx + dy * dy;
      ystep_sq += dy * dy;
      dstep_sq += dd * dd;
      ediff_sq += de * de;
    }
    rec.step_norm = std::sqrt(step_sq);
    rec.y_step = std::sqrt(ystep_sq);
    rec.dual_step = std::sqrt(dstep_sq);
    rec.e2_diff_norm = std::sqrt(ediff_sq);
    rec.e1_norm = norm(e1);
    rec.e2_norm = norm(e2);
    // Combined perturbation entering the descent and error inequalities.
    rec.eta = std::sqrt(ediff_sq + rec.e1_norm * rec.e1_norm + rec.e2_norm * rec.e2_norm);

    // Stacked subgradient of the augmented Lagrangian at the new triple.
    double wit_sq = 0.0;
    for (int i = 0; i < dim; ++i) {
      double dd = dualn[i] - dual[i];
      double wx = alpha * (x[i] - xn[i]) + beta * (yn[i] - y[i]) + dd +
                  (alpha + beta) * e1[i];
      double wy = dd + beta * e2[i];
      double wg = dd / beta;
      wit_sq += wx * wx + wy * wy + wg * wg;
    }
    rec.witness_norm = std::sqrt(wit_sq);
    rec.x = stacked(xn, yn, dualn);
    if (!record_finite(rec)) {
      out.trace.status = RunStatus::numeric_failure;
      return out;
    }
    out.trace.records.push_back(std::move(rec));
    x = std::move(xn);
    y = std::move(yn);
    dual = std::move(dualn);
    e2_prev = e2;
    if (cfg.stop_tol > 0.0 && out.trace.records.back().witness_norm <= cfg.stop_tol) break;
  }
  return out;
}

}  // namespace inopt
