#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace inopt {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm_sq(const Vec& a);
double norm(const Vec& a);
// ||a - b||
double norm_diff(const Vec& a, const Vec& b);
bool all_finite(const Vec& a);

// Compensated accumulator for long sums.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Dense row-major matrix, just enough for the synthetic instances.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

Vec matvec(const Matrix& m, const Vec& x);
Vec matvec_t(const Matrix& m, const Vec& x);

}  // namespace inopt
