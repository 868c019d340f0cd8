#include "inopt/vec.hpp"

#include <cmath>

namespace inopt {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

double norm_diff(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool all_finite(const Vec& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

Vec matvec(const Matrix& m, const Vec& x) {
  Vec y(static_cast<std::size_t>(m.rows), 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    const double* row = &m.a[static_cast<std::size_t>(i) * m.cols];
    for (int j = 0; j < m.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vec matvec_t(const Matrix& m, const Vec& x) {
  Vec y(static_cast<std::size_t>(m.cols), 0.0);
  for (int i = 0; i < m.rows; ++i) {
    const double* row = &m.a[static_cast<std::size_t>(i) * m.cols];
    for (int j = 0; j < m.cols; ++j) y[j] += row[j] * x[i];
  }
  return y;
}

}  // namespace inopt
