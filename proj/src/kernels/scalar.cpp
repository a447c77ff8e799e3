#include "ppa/kernels.hpp"

#include <algorithm>

namespace ppa::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double sum_squares(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

void polyval(const double* coeffs, int degree, const double* x, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    double acc = coeffs[degree];
    for (int j = degree - 1; j >= 0; --j) acc = acc * x[k] + coeffs[j];
    out[k] = acc;
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void min_max(const double* x, std::size_t n, double* lo, double* hi) {
  double l = x[0];
  double h = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    l = std::min(l, x[i]);
    h = std::max(h, x[i]);
  }
  *lo = l;
  *hi = h;
}

}  // namespace ppa::kernels::scalar
