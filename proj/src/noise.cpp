#include "inopt/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "inopt/errors.hpp"

namespace inopt {

namespace {
constexpr long kPowerLawHorizon = 1000000;
}

NoiseSchedule NoiseSchedule::zero() {
  NoiseSchedule s;
  s.kind = ScheduleKind::zero;
  return s;
}

NoiseSchedule NoiseSchedule::power_law(double c, double alpha) {
  if (!(c > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("power_law schedule needs c > 0 and alpha > 0");
  NoiseSchedule s;
  s.kind = ScheduleKind::power_law;
  s.c = c;
  s.alpha = alpha;
  return s;
}

NoiseSchedule NoiseSchedule::constant(double c) {
  if (c < 0.0) throw std::invalid_argument("constant schedule needs c >= 0");
  NoiseSchedule s;
  s.kind = ScheduleKind::constant;
  s.c = c;
  return s;
}

NoiseSchedule NoiseSchedule::explicit_list(std::vector<double> values) {
  for (double v : values)
    if (v < 0.0) throw std::invalid_argument("explicit schedule entries must be >= 0");
  NoiseSchedule s;
  s.kind = ScheduleKind::explicit_list;
  s.values = std::move(values);
  return s;
}

NoiseSchedule& NoiseSchedule::with_random_sphere(std::uint64_t seed) {
  direction = DirectionKind::random_sphere;
  dir_seed = seed;
  return *this;
}

NoiseSchedule& NoiseSchedule::with_fixed(Vec d) {
  double n = norm(d);
  if (!(n > 0.0)) throw std::invalid_argument("fixed direction must be nonzero");
  for (double& v : d) v /= n;
  direction = DirectionKind::fixed;
  fixed_dir = std::move(d);
  return *this;
}

NoiseSchedule& NoiseSchedule::with_adversarial_positive() {
  direction = DirectionKind::adversarial_positive;
  return *this;
}

double NoiseSchedule::eta(long k) const {
  if (k < start_index) throw std::invalid_argument("eta: index below schedule start");
  switch (kind) {
    case ScheduleKind::zero:
      return 0.0;
    case ScheduleKind::constant:
      return c;
    case ScheduleKind::power_law:
      return c / std::pow(static_cast<double>(k), alpha);
    case ScheduleKind::explicit_list: {
      long i = k - start_index;
      if (i >= static_cast<long>(values.size())) return 0.0;
      return values[static_cast<std::size_t>(i)];
    }
  }
  return 0.0;
}

bool NoiseSchedule::summable() const {
  switch (kind) {
    case ScheduleKind::zero:
    case ScheduleKind::explicit_list:
      return true;
    case ScheduleKind::constant:
      return c == 0.0;
    case ScheduleKind::power_law:
      return alpha > 1.0;
  }
  return false;
}

bool NoiseSchedule::square_summable() const {
  switch (kind) {
    case ScheduleKind::zero:
    case ScheduleKind::explicit_list:
      return true;
    case ScheduleKind::constant:
      return c == 0.0;
    case ScheduleKind::power_law:
      return alpha > 0.5;
  }
  return false;
}

double NoiseSchedule::tail_sum_sq(long k, double tolerance) const {
  if (k < start_index) throw std::invalid_argument("tail_sum_sq: index below schedule start");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tail_sum_sq: tolerance must be positive");
  switch (kind) {
    case ScheduleKind::zero:
      return 0.0;
    case ScheduleKind::constant:
      if (c == 0.0) return 0.0;
      throw NotSummableError("tail_sum_sq: constant schedule has divergent tail");
    case ScheduleKind::explicit_list: {
      KahanSum s;
      long last = start_index + static_cast<long>(values.size()) - 1;
      for (long l = last; l >= k; --l) {
        double v = values[static_cast<std::size_t>(l - start_index)];
        s.add(v * v);
      }
      return s.value();
    }
    case ScheduleKind::power_law: {
      if (!(alpha > 0.5))
        throw NotSummableError("tail_sum_sq: power-law tail diverges for alpha <= 1/2");
      const double p = 2.0 * alpha;
      const double c2 = c * c;
      long horizon = std::max(k - 1, kPowerLawHorizon);
      // Far tail from horizon+1: integral plus the first two Euler-Maclaurin
      // corrections. The neglected term is O(c^2 * horizon^(-p-3)); extend the
      // horizon until that bound sits below the requested tolerance.
      auto em_error = [&](long h) {
        double mm = static_cast<double>(h) + 1.0;
        return p * (p + 1.0) * (p + 2.0) * c2 * std::pow(mm, -p - 3.0) / 720.0;
      };
      while (em_error(horizon) > tolerance && horizon < 100000000L) horizon *= 4;
      const double m = static_cast<double>(horizon) + 1.0;
      double rem = c2 * std::pow(m, 1.0 - p) / (p - 1.0) + 0.5 * c2 * std::pow(m, -p) +
                   (p / 12.0) * c2 * std::pow(m, -p - 1.0);
      KahanSum s;
      for (long l = horizon; l >= k; --l) s.add(c2 * std::pow(static_cast<double>(l), -p));
      return s.value() + rem;
    }
  }
  return 0.0;
}

std::vector<double> NoiseSchedule::tail_sum_sq_series(long first_k, long last_k,
                                                      double tolerance) const {
  if (first_k > last_k) throw std::invalid_argument("tail_sum_sq_series: empty range");
  const std::size_t n = static_cast<std::size_t>(last_k - first_k) + 2;
  std::vector<double> tails(n, 0.0);
  tails[n - 1] = tail_sum_sq(last_k + 1, tolerance);
  for (long k = last_k; k >= first_k; --k) {
    double e = eta(k);
    tails[static_cast<std::size_t>(k - first_k)] =
        tails[static_cast<std::size_t>(k - first_k) + 1] + e * e;
  }
  return tails;
}

Vec NoiseSchedule::draw(long k, int dimension) const {
  if (dimension < 1) throw std::invalid_argument("draw: dimension must be >= 1");
  const double m = eta(k);
  Vec e(static_cast<std::size_t>(dimension), 0.0);
  if (m == 0.0) return e;
  switch (direction) {
    case DirectionKind::adversarial_positive: {
      double v = m / std::sqrt(static_cast<double>(dimension));
      for (double& x : e) x = v;
      break;
    }
    case DirectionKind::fixed: {
      if (static_cast<int>(fixed_dir.size()) != dimension)
        throw std::invalid_argument("draw: fixed direction dimension mismatch");
      for (int i = 0; i < dimension; ++i) e[i] = m * fixed_dir[i];
      break;
    }
    case DirectionKind::random_sphere: {
      std::seed_seq seq{static_cast<unsigned>(dir_seed), static_cast<unsigned>(dir_seed >> 32),
                        static_cast<unsigned>(k), static_cast<unsigned>(static_cast<std::uint64_t>(k) >> 32)};
      std::mt19937_64 eng(seq);
      std::normal_distribution<double> gauss(0.0, 1.0);
      double n2 = 0.0;
      do {
        for (double& x : e) x = gauss(eng);
        n2 = norm_sq(e);
      } while (n2 < 1e-300);
      double scale = m / std::sqrt(n2);
      for (double& x : e) x *= scale;
      break;
    }
  }
  return e;
}

LyapunovParams::LyapunovParams(double theta_, double b_) : theta(theta_), b(b_) {
  if (!(theta > 1.0)) throw std::invalid_argument("LyapunovParams: theta must exceed 1");
  if (!(b >= 0.0)) throw std::invalid_argument("LyapunovParams: b must be >= 0");
}

double t_sequence(const NoiseSchedule& schedule, const LyapunovParams& params, long k,
                  double tolerance) {
  double tail = schedule.tail_sum_sq(k, tolerance);
  return std::pow(params.theta * params.b * tail, 1.0 / params.theta);
}

double xi_value(double f_value, double t, double theta) {
  return f_value + std::pow(t, theta) / theta;
}

double c_theta(double theta) {
  if (!(theta > 1.0)) throw std::invalid_argument("c_theta: theta must exceed 1");
  return (2.0 * theta - 1.0) / (2.0 * (theta - 1.0));
}

}  // namespace inopt
