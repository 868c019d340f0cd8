#include "inopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>

#include "inopt/errors.hpp"

namespace inopt {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

Vec gaussian_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  for (double& x : v) x = gauss(rng);
  return v;
}

Vec uniform_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> uni(lo, hi);
  Vec v(n);
  for (double& x : v) x = uni(rng);
  return v;
}

SmoothFn quadratic_anchor(std::shared_ptr<const Vec> anchor, double curvature) {
  SmoothFn f;
  f.lipschitz = curvature;
  f.eval = [anchor, curvature](const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double d = x[i] - (*anchor)[i];
      s += d * d;
    }
    return 0.5 * curvature * s;
  };
  f.grad = [anchor, curvature](const Vec& x) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = curvature * (x[i] - (*anchor)[i]);
    return g;
  };
  return f;
}

}  // namespace

ProxFn l1_term(double weight) {
  if (weight < 0.0) throw std::invalid_argument("l1_term: weight must be >= 0");
  ProxFn p;
  p.is_convex = true;
  p.eval = [weight](const Vec& x) {
    double s = 0.0;
    for (double v : x) s += weight * std::fabs(v);
    return s;
  };
  if (weight == 0.0) {
    p.prox = [](const Vec& x, double) { return x; };
  } else {
    p.prox = [weight](const Vec& x, double tau) {
      Vec z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = soft_threshold(x[i], tau * weight);
      return z;
    };
  }
  return p;
}

ProxFn l0_term(double weight, TiePolicy tie) {
  if (weight < 0.0) throw std::invalid_argument("l0_term: weight must be >= 0");
  ProxFn p;
  p.is_convex = false;
  p.eval = [weight](const Vec& x) {
    double s = 0.0;
    for (double v : x)
      if (v != 0.0) s += weight;
    return s;
  };
  if (weight == 0.0) {
    p.prox = [](const Vec& x, double) { return x; };
  } else {
    p.prox = [weight, tie](const Vec& x, double tau) { return prox_l0(x, tau * weight, tie); };
  }
  return p;
}

RegressionData sparse_regression_data(int n_rows, int n_cols, int sparsity, std::uint64_t seed) {
  if (n_rows < 1 || n_cols < 1) throw std::invalid_argument("regression dimensions must be >= 1");
  if (sparsity < 0 || sparsity > n_cols)
    throw std::invalid_argument("sparsity must lie in [0, n_cols]");
  auto rng = make_rng(seed);
  RegressionData d;
  d.a = Matrix(n_rows, n_cols);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double& v : d.a.a) v = gauss(rng);
  d.x_true.assign(static_cast<std::size_t>(n_cols), 0.0);
  std::vector<int> idx(static_cast<std::size_t>(n_cols));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  for (int s = 0; s < sparsity; ++s) {
    double v = gauss(rng);
    d.x_true[static_cast<std::size_t>(idx[static_cast<std::size_t>(s)])] =
        (v >= 0.0) ? v + 1.0 : v - 1.0;
  }
  d.y = matvec(d.a, d.x_true);
  for (double& v : d.y) v += 0.01 * gauss(rng);
  return d;
}

double power_iteration_lmax(const Matrix& a, double tol, int max_iters) {
  auto rng = make_rng(0x9e3779b97f4a7c15ULL);
  Vec v = gaussian_vec(rng, static_cast<std::size_t>(a.cols));
  double n = norm(v);
  for (double& x : v) x /= n;
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Vec w = matvec_t(a, matvec(a, v));
    double lambda_new = dot(v, w);
    double wn = norm(w);
    if (wn == 0.0) return 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i] / wn;
    if (it > 0 && std::fabs(lambda_new - lambda) <= tol * std::max(std::fabs(lambda_new), 1.0)) {
      lambda = lambda_new;
      break;
    }
    lambda = lambda_new;
  }
  return lambda;
}

CompositeProblem make_least_squares(Matrix a, Vec y, double reg_weight, RegKind reg) {
  if (a.rows < 1 || a.cols < 1) throw std::invalid_argument("least squares: empty matrix");
  if (static_cast<int>(y.size()) != a.rows)
    throw std::invalid_argument("least squares: rhs size mismatch");
  CompositeProblem p;
  p.dimension = a.cols;
  double lmax = power_iteration_lmax(a);
  auto am = std::make_shared<const Matrix>(std::move(a));
  auto ym = std::make_shared<const Vec>(std::move(y));
  // Stored constant is inflated by 1e-7 so it certifiably upper-bounds the
  // true spectral norm despite power iteration converging from below.
  p.f.lipschitz = lmax * (1.0 + 1e-7);
  p.f.eval = [am, ym](const Vec& x) {
    Vec r = matvec(*am, x);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      double d = r[i] - (*ym)[i];
      s += d * d;
    }
    return 0.5 * s;
  };
  p.f.grad = [am, ym](const Vec& x) {
    Vec r = matvec(*am, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= (*ym)[i];
    return matvec_t(*am, r);
  };
  p.g = (reg == RegKind::l1) ? l1_term(reg_weight) : l0_term(reg_weight);
  return p;
}

CompositeProblem make_sparse_regression(int n_rows, int n_cols, int sparsity, double reg_weight,
                                        RegKind reg, std::uint64_t seed) {
  if (n_rows < 1 || n_cols < 1) throw std::invalid_argument("regression dimensions must be >= 1");
  RegressionData d = sparse_regression_data(n_rows, n_cols, sparsity, seed);
  CompositeProblem p = make_least_squares(std::move(d.a), std::move(d.y), reg_weight, reg);
  p.spec = {{"kind", "sparse_regression"}, {"n_rows", n_rows},         {"n_cols", n_cols},
            {"sparsity", sparsity},        {"reg_weight", reg_weight},
            {"reg_kind", reg == RegKind::l1 ? "l1" : "l0"},            {"seed", seed}};
  return p;
}

CompositeProblem make_zero_composite(int dimension) {
  if (dimension < 1) throw std::invalid_argument("zero composite: dimension must be >= 1");
  CompositeProblem p;
  p.dimension = dimension;
  // The zero gradient is 1-Lipschitz; storing 1 keeps the constant positive.
  p.f.lipschitz = 1.0;
  p.f.eval = [](const Vec&) { return 0.0; };
  p.f.grad = [](const Vec& x) { return Vec(x.size(), 0.0); };
  p.g.is_convex = true;
  p.g.eval = [](const Vec&) { return 0.0; };
  p.g.prox = [](const Vec& x, double) { return x; };
  p.spec = {{"kind", "zero_composite"}, {"dimension", dimension}};
  return p;
}

AdmmProblem make_admm_quadratic(double target, int dimension) {
  if (dimension < 1) throw std::invalid_argument("admm quadratic: dimension must be >= 1");
  AdmmProblem p;
  p.dimension = dimension;
  p.f.is_convex = true;
  p.f.eval = [](const Vec& x) { return 0.5 * norm_sq(x); };
  p.f.prox = [](const Vec& x, double tau) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] / (1.0 + tau);
    return z;
  };
  p.g.lipschitz = 1.0;
  p.g.eval = [target](const Vec& y) {
    double s = 0.0;
    for (double v : y) {
      double d = v - target;
      s += d * d;
    }
    return 0.5 * s;
  };
  p.g.grad = [target](const Vec& y) {
    Vec g(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) g[i] = y[i] - target;
    return g;
  };
  p.g_prox = [target](const Vec& y, double tau) {
    Vec z(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) z[i] = (y[i] + tau * target) / (1.0 + tau);
    return z;
  };
  p.g_convex = true;
  // g(y) - 0.5*||grad g(y)||^2 vanishes identically, hence bounded below.
  p.sigma0 = 0.5;
  p.spec = {{"kind", "admm_quadratic"}, {"target", target}, {"dimension", dimension}};
  return p;
}

BlockProblem make_consensus_block(int dimension, double w_y, double w_z, std::uint64_t seed) {
  if (dimension < 1) throw std::invalid_argument("consensus block: dimension must be >= 1");
  BlockProblem p;
  p.dim_y = dimension;
  p.dim_z = dimension;
  auto rng = make_rng(seed);
  auto offset = std::make_shared<const Vec>(uniform_vec(rng, static_cast<std::size_t>(dimension),
                                                        -2.0, 2.0));
  p.f = l1_term(w_y);
  p.g = l1_term(w_z);
  p.coupling.eval = [offset, dimension](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < dimension; ++i) {
      double d = x[i] - x[dimension + i] - (*offset)[i];
      s += d * d;
    }
    return 0.5 * s;
  };
  p.coupling.grad = [offset, dimension](const Vec& x) {
    Vec g(x.size(), 0.0);
    for (int i = 0; i < dimension; ++i) {
      double d = x[i] - x[dimension + i] - (*offset)[i];
      g[i] = d;
      g[dimension + i] = -d;
    }
    return g;
  };
  p.lip_y = 1.0;
  p.lip_z = 1.0;
  p.lip_joint = std::sqrt(2.0);
  // Constant of the full stacked gradient (the blockwise constants above are
  // what the alternating scheme consumes).
  p.coupling.lipschitz = 2.0;
  p.spec = {{"kind", "consensus_block"}, {"dimension", dimension}, {"w_y", w_y}, {"w_z", w_z},
            {"seed", seed}};
  return p;
}

namespace {

ReweightedProblem reweighted_base(int dimension, double anchor_scale, std::uint64_t seed) {
  if (dimension < 1) throw std::invalid_argument("reweighted: dimension must be >= 1");
  ReweightedProblem p;
  p.dimension = dimension;
  auto rng = make_rng(seed);
  auto anchor = std::make_shared<const Vec>(uniform_vec(rng, static_cast<std::size_t>(dimension),
                                                        -anchor_scale, anchor_scale));
  p.f = quadratic_anchor(anchor, 1.0);
  p.g.modulus = 1.0;
  p.g.eval = [](double s) { return std::fabs(s); };
  p.g.prox = [](double v, double tau) { return soft_threshold(v, tau); };
  return p;
}

}  // namespace

ReweightedProblem make_reweighted_log(int dimension, double reg, double anchor_scale,
                                      std::uint64_t seed) {
  if (!(reg > 0.0)) throw std::invalid_argument("reweighted log: reg must be positive");
  ReweightedProblem p = reweighted_base(dimension, anchor_scale, seed);
  p.h.lipschitz = reg;
  p.h.eval = [reg](double s) { return reg * std::log1p(s); };
  p.h.deriv = [reg](double s) { return reg / (1.0 + s); };
  p.spec = {{"kind", "reweighted_log"}, {"dimension", dimension}, {"reg", reg},
            {"anchor_scale", anchor_scale}, {"seed", seed}};
  return p;
}

ReweightedProblem make_reweighted_linear(int dimension, double weight, double anchor_scale,
                                         std::uint64_t seed) {
  if (!(weight > 0.0)) throw std::invalid_argument("reweighted linear: weight must be positive");
  ReweightedProblem p = reweighted_base(dimension, anchor_scale, seed);
  p.h.lipschitz = 0.0;
  p.h.eval = [weight](double s) { return weight * s; };
  p.h.deriv = [weight](double) { return weight; };
  p.spec = {{"kind", "reweighted_linear"}, {"dimension", dimension}, {"weight", weight},
            {"anchor_scale", anchor_scale}, {"seed", seed}};
  return p;
}

DCProblem make_dc_quadratic(int dimension, double h_curvature, double reg_weight,
                            bool anchor_ones, std::uint64_t seed) {
  if (dimension < 1) throw std::invalid_argument("dc quadratic: dimension must be >= 1");
  if (h_curvature < 0.0) throw std::invalid_argument("dc quadratic: curvature must be >= 0");
  DCProblem p;
  p.dimension = dimension;
  std::shared_ptr<const Vec> anchor;
  if (anchor_ones) {
    anchor = std::make_shared<const Vec>(Vec(static_cast<std::size_t>(dimension), 1.0));
  } else {
    auto rng = make_rng(seed);
    anchor = std::make_shared<const Vec>(uniform_vec(rng, static_cast<std::size_t>(dimension),
                                                     -2.0, 2.0));
  }
  p.f = quadratic_anchor(anchor, 1.0);
  p.g = l1_term(reg_weight);
  auto zero = std::make_shared<const Vec>(Vec(static_cast<std::size_t>(dimension), 0.0));
  p.h = quadratic_anchor(zero, h_curvature);
  p.spec = {{"kind", "dc_quadratic"},  {"dimension", dimension},
            {"h_curvature", h_curvature}, {"reg_weight", reg_weight},
            {"anchor", anchor_ones ? "ones" : "seeded"}, {"seed", seed}};
  return p;
}

double check_gradient(const SmoothFn& fn, const Vec& point, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("check_gradient: step must be positive");
  if (!all_finite(point)) throw std::invalid_argument("check_gradient: point must be finite");
  Vec g = fn.grad(point);
  Vec probe = point;
  double worst = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    probe[i] = point[i] + step;
    double up = fn.eval(probe);
    probe[i] = point[i] - step;
    double dn = fn.eval(probe);
    probe[i] = point[i];
    if (!std::isfinite(up) || !std::isfinite(dn))
      throw NumericError("check_gradient: non-finite objective value");
    double fd = (up - dn) / (2.0 * step);
    double err = std::fabs(fd - g[i]) / (1.0 + std::fabs(g[i]));
    worst = std::max(worst, err);
  }
  return worst;
}

namespace {
double jnum(const nlohmann::json& j, const char* key) { return j.at(key).get<double>(); }
int jint(const nlohmann::json& j, const char* key) { return j.at(key).get<int>(); }
std::uint64_t jseed(const nlohmann::json& j, const char* key) {
  return j.at(key).get<std::uint64_t>();
}
}  // namespace

CompositeProblem composite_from_spec(const nlohmann::json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "sparse_regression") {
    RegKind reg = spec.at("reg_kind").get<std::string>() == "l0" ? RegKind::l0 : RegKind::l1;
    return make_sparse_regression(jint(spec, "n_rows"), jint(spec, "n_cols"),
                                  jint(spec, "sparsity"), jnum(spec, "reg_weight"), reg,
                                  jseed(spec, "seed"));
  }
  if (kind == "zero_composite") return make_zero_composite(jint(spec, "dimension"));
  throw ConfigError("unknown composite problem kind: " + kind);
}

BlockProblem block_from_spec(const nlohmann::json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "consensus_block")
    return make_consensus_block(jint(spec, "dimension"), jnum(spec, "w_y"), jnum(spec, "w_z"),
                                jseed(spec, "seed"));
  throw ConfigError("unknown block problem kind: " + kind);
}

ReweightedProblem reweighted_from_spec(const nlohmann::json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "reweighted_log")
    return make_reweighted_log(jint(spec, "dimension"), jnum(spec, "reg"),
                               jnum(spec, "anchor_scale"), jseed(spec, "seed"));
  if (kind == "reweighted_linear")
    return make_reweighted_linear(jint(spec, "dimension"), jnum(spec, "weight"),
                                  jnum(spec, "anchor_scale"), jseed(spec, "seed"));
  throw ConfigError("unknown reweighted problem kind: " + kind);
}

DCProblem dc_from_spec(const nlohmann::json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "dc_quadratic")
    return make_dc_quadratic(jint(spec, "dimension"), jnum(spec, "h_curvature"),
                             jnum(spec, "reg_weight"),
                             spec.at("anchor").get<std::string>() == "ones",
                             jseed(spec, "seed"));
  throw ConfigError("unknown dc problem kind: " + kind);
}

AdmmProblem admm_from_spec(const nlohmann::json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "admm_quadratic")
    return make_admm_quadratic(jnum(spec, "target"), jint(spec, "dimension"));
  throw ConfigError("unknown admm problem kind: " + kind);
}

ProblemFamily family_of_kind(const std::string& kind) {
  if (kind == "sparse_regression" || kind == "zero_composite") return ProblemFamily::composite;
  if (kind == "consensus_block") return ProblemFamily::block;
  if (kind == "reweighted_log" || kind == "reweighted_linear") return ProblemFamily::reweighted;
  if (kind == "dc_quadratic") return ProblemFamily::dc;
  if (kind == "admm_quadratic") return ProblemFamily::admm;
  throw ConfigError("unknown problem kind: " + kind);
}

}  // namespace inopt
