#include "inopt/prox.hpp"

#include <cmath>
#include <stdexcept>

#include "inopt/errors.hpp"

namespace inopt {

double soft_threshold(double v, double thr) {
  if (v > thr) return v - thr;
  if (v < -thr) return v + thr;
  return 0.0;
}

Vec prox_l1(const Vec& x, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("prox_l1: tau must be positive");
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = soft_threshold(x[i], tau);
  return z;
}

Vec prox_l0(const Vec& x, double tau, TiePolicy tie) {
  if (!(tau > 0.0)) throw std::invalid_argument("prox_l0: tau must be positive");
  const double thr = std::sqrt(2.0 * tau);
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double m = std::fabs(x[i]);
    if (m > thr)
      z[i] = x[i];
    else if (m < thr)
      z[i] = 0.0;
    else
      z[i] = (tie == TiePolicy::keep) ? x[i] : 0.0;
  }
  return z;
}

Vec prox_weighted_l1(const Vec& x, const Vec& weights, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("prox_weighted_l1: tau must be positive");
  if (weights.size() != x.size())
    throw std::invalid_argument("prox_weighted_l1: weight/point size mismatch");
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(weights[i] > 0.0))
      throw std::invalid_argument("prox_weighted_l1: weights must be strictly positive");
    z[i] = soft_threshold(x[i], tau * weights[i]);
  }
  return z;
}

double prox_oracle(const std::function<double(double)>& j, double x, double lo, double hi,
                   int grid_points) {
  if (!(lo < hi)) throw std::invalid_argument("prox_oracle: need lo < hi");
  if (grid_points < 3) throw std::invalid_argument("prox_oracle: need at least 3 grid points");
  const double step = (hi - lo) / (grid_points - 1);
  double best_y = 0.0;
  double best_val = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int i = 0; i < grid_points; ++i) {
    double y = lo + i * step;
    double jy = j(y);
    if (std::isnan(jy)) throw NumericError("prox_oracle: objective evaluated to NaN");
    double val = jy + 0.5 * (y - x) * (y - x);
    if (val < best_val) {
      best_val = val;
      best_y = y;
      found = true;
    }
  }
  if (!found) throw NumericError("prox_oracle: objective infinite on the whole grid");
  return best_y;
}

}  // namespace inopt
