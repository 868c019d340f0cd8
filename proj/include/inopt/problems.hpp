#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "inopt/prox.hpp"
#include "inopt/vec.hpp"
#include "json.hpp"

namespace inopt {

// Differentiable term with a known Lipschitz constant of its gradient.
struct SmoothFn {
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> grad;
  double lipschitz = 0.0;
};

// Possibly nonsmooth (extended-real) term with a proximal oracle.
// prox(x, tau) minimizes tau*J(y) + ||y - x||^2 / 2.
struct ProxFn {
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&, double)> prox;
  bool is_convex = false;
};

// Scalar convex term for the reweighted scheme: |g(s)-g(t)| <= modulus*|s-t|.
struct ScalarConvexFn {
  std::function<double(double)> eval;
  std::function<double(double, double)> prox;  // prox of tau*g
  double modulus = 0.0;
};

// Scalar concave differentiable outer function with Lipschitz derivative.
struct ScalarSmoothFn {
  std::function<double(double)> eval;
  std::function<double(double)> deriv;
  double lipschitz = 0.0;
};

struct CompositeProblem {
  SmoothFn f;
  ProxFn g;
  int dimension = 0;
  nlohmann::json spec;
};

struct BlockProblem {
  ProxFn f;  // y-block term
  ProxFn g;  // z-block term
  SmoothFn coupling;  // over the stacked (y, z) point
  double lip_y = 0.0;     // Lipschitz of grad_y coupling in y
  double lip_z = 0.0;     // Lipschitz of grad_z coupling in z
  double lip_joint = 0.0; // Lipschitz of grad_y coupling in (y, z)
  int dim_y = 0;
  int dim_z = 0;
  nlohmann::json spec;
};

struct ReweightedProblem {
  SmoothFn f;
  ScalarConvexFn g;
  ScalarSmoothFn h;
  int dimension = 0;
  nlohmann::json spec;
};

struct DCProblem {
  SmoothFn f;
  ProxFn g;
  SmoothFn h;  // convex, smooth
  int dimension = 0;
  nlohmann::json spec;
};

struct AdmmProblem {
  ProxFn f;
  SmoothFn g;
  std::function<Vec(const Vec&, double)> g_prox;
  bool g_convex = true;
  double sigma0 = 0.0;  // g(y) - sigma0*||grad g(y)||^2 bounded below
  int dimension = 0;
  nlohmann::json spec;
};

enum class RegKind { l1, l0 };

// Separable regularizer terms shared by the generators.
ProxFn l1_term(double weight);
ProxFn l0_term(double weight, TiePolicy tie = TiePolicy::zero);

// Synthetic least-squares data: A is n_rows x n_cols with i.i.d. standard
// normal entries, y = A*x_true + 0.01*noise, x_true has `sparsity` nonzeros.
struct RegressionData {
  Matrix a;
  Vec y;
  Vec x_true;
};
RegressionData sparse_regression_data(int n_rows, int n_cols, int sparsity, std::uint64_t seed);

// 0.5*||Ax - y||^2 + reg_weight * (l1 or l0). Lipschitz constant of the
// smooth part comes from power iteration on A^T A.
CompositeProblem make_least_squares(Matrix a, Vec y, double reg_weight, RegKind reg);
CompositeProblem make_sparse_regression(int n_rows, int n_cols, int sparsity, double reg_weight,
                                        RegKind reg, std::uint64_t seed);

// Identically-zero objective in the given dimension (both terms vanish).
CompositeProblem make_zero_composite(int dimension);

// f(x) = 0.5*||x||^2, g(y) = 0.5*||y - target*1||^2, constraint x + y = 0.
AdmmProblem make_admm_quadratic(double target, int dimension = 1);

// w_y*||y||_1 + 0.5*||y - z - c||^2 + w_z*||z||_1 with seeded offset c.
BlockProblem make_consensus_block(int dimension, double w_y, double w_z, std::uint64_t seed);

// 0.5*||x - anchor||^2 + reg * sum_i log(1 + |x_i|).
ReweightedProblem make_reweighted_log(int dimension, double reg, double anchor_scale,
                                      std::uint64_t seed);
// Same smooth part with a linear outer function h(s) = weight*s, so the
// reweighting degenerates to constant weights.
ReweightedProblem make_reweighted_linear(int dimension, double weight, double anchor_scale,
                                         std::uint64_t seed);

// 0.5*||x - anchor||^2 + reg*||x||_1 - (h_curvature/2)*||x||^2.
DCProblem make_dc_quadratic(int dimension, double h_curvature, double reg_weight,
                            bool anchor_ones, std::uint64_t seed);

// Max over coordinates of |central difference - gradient| / (1 + |gradient|).
double check_gradient(const SmoothFn& fn, const Vec& point, double step);

// Largest eigenvalue of A^T A by power iteration.
double power_iteration_lmax(const Matrix& a, double tol = 1e-8, int max_iters = 10000);

// Rebuild a problem from its JSON description (the `spec` member).
CompositeProblem composite_from_spec(const nlohmann::json& spec);
BlockProblem block_from_spec(const nlohmann::json& spec);
ReweightedProblem reweighted_from_spec(const nlohmann::json& spec);
DCProblem dc_from_spec(const nlohmann::json& spec);
AdmmProblem admm_from_spec(const nlohmann::json& spec);

// Problem family a given spec kind belongs to.
enum class ProblemFamily { composite, block, reweighted, dc, admm };
ProblemFamily family_of_kind(const std::string& kind);

}  // namespace inopt
