#pragma once

#include <cstdint>
#include <vector>

#include "inopt/vec.hpp"

namespace inopt {

enum class ScheduleKind { zero, power_law, constant, explicit_list };
enum class DirectionKind { random_sphere, fixed, adversarial_positive };

// Deterministic rule eta(k) for the per-iteration perturbation magnitude,
// plus the policy that turns magnitudes into vectors.
struct NoiseSchedule {
  ScheduleKind kind = ScheduleKind::zero;
  double c = 0.0;      // power_law scale / constant level
  double alpha = 0.0;  // power_law exponent
  std::vector<double> values;

  DirectionKind direction = DirectionKind::random_sphere;
  std::uint64_t dir_seed = 0;
  Vec fixed_dir;  // unit vector, normalized by make_fixed
  long start_index = 1;

  static NoiseSchedule zero();
  static NoiseSchedule power_law(double c, double alpha);
  static NoiseSchedule constant(double c);
  static NoiseSchedule explicit_list(std::vector<double> values);

  NoiseSchedule& with_random_sphere(std::uint64_t seed);
  NoiseSchedule& with_fixed(Vec direction);
  NoiseSchedule& with_adversarial_positive();

  // Magnitude at index k (k >= start_index). Explicit lists return 0 past
  // their end.
  double eta(long k) const;

  // sum_k eta(k) finite?
  bool summable() const;
  // sum_k eta(k)^2 finite?
  bool square_summable() const;

  // sum_{l >= k} eta(l)^2 to absolute accuracy <= tolerance. Power-law tails
  // use a truncated sum plus an Euler-Maclaurin remainder for the far tail.
  // Throws NotSummableError when the series diverges.
  double tail_sum_sq(long k, double tolerance = 1e-12) const;

  // Bulk form: tails for k = first_k .. last_k+1 in one reverse pass, so that
  // consecutive entries differ by exactly eta(k)^2 in floating point.
  std::vector<double> tail_sum_sq_series(long first_k, long last_k,
                                         double tolerance = 1e-12) const;

  // Vector with ||e|| = eta(k); deterministic per (dir_seed, k).
  Vec draw(long k, int dimension) const;
};

struct LyapunovParams {
  double theta = 2.0;
  double b = 0.0;
  LyapunovParams() = default;
  LyapunovParams(double theta_, double b_);
};

// t_k = (theta * b * sum_{l>=k} eta(l)^2)^(1/theta)
double t_sequence(const NoiseSchedule& schedule, const LyapunovParams& params, long k,
                  double tolerance = 1e-12);

// xi = F + t^theta / theta
double xi_value(double f_value, double t, double theta);

// (2 theta - 1) / (2 (theta - 1)), theta > 1. Decreasing, -> 1 at infinity.
double c_theta(double theta);

}  // namespace inopt
