#pragma once

#include <functional>

#include "inopt/vec.hpp"

namespace inopt {

// Selection rule for set-valued proximal maps at threshold ties.
enum class TiePolicy { keep, zero };

double soft_threshold(double v, double thr);

// prox of tau*||.||_1 (componentwise soft-thresholding).
Vec prox_l1(const Vec& x, double tau);

// prox of tau*||.||_0 (componentwise hard-thresholding). A coordinate sitting
// exactly at the |x_i| = sqrt(2 tau) tie attains the same objective either
// way; `tie` picks the survivor deterministically.
Vec prox_l0(const Vec& x, double tau, TiePolicy tie = TiePolicy::zero);

// Componentwise soft-thresholding at per-coordinate level tau*w_i.
// All weights must be strictly positive.
Vec prox_weighted_l1(const Vec& x, const Vec& weights, double tau);

// Brute-force scalar prox: argmin over a uniform grid of J(y) + (y-x)^2/2.
// Test-side ground truth only; solvers never call this.
double prox_oracle(const std::function<double(double)>& j, double x, double lo, double hi,
                   int grid_points);

}  // namespace inopt
