#pragma once

// Inner-loop kernels used by fitting, transforms, k-NN and entropy estimation.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active table is chosen once at first use from CPU features;
// PPA_SIMD=scalar in the environment forces the reference path.
//
// Element-wise kernels (polyval, axpy, min_max) round identically in both
// variants: no fused multiply-add, lane i performs exactly the scalar
// operation sequence on element i. Reductions (dot, squared_distance,
// sum_squares) reassociate and agree only to rounding.

#include <cstddef>

namespace ppa::kernels {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

struct Table {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  // out[k] = sum_j coeffs[j] * x[k]^j, Horner from coeffs[degree] down.
  void (*polyval)(const double* coeffs, int degree, const double* x, double* out, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*min_max)(const double* x, std::size_t n, double* lo, double* hi);
};

const Table& scalar_table();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const Table* avx2_table();

const Table& active();

// Test hook: override the runtime selection. Not thread-safe against
// concurrent kernel use.
void force(Isa isa);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
double sum_squares(const double* a, std::size_t n);
void polyval(const double* coeffs, int degree, const double* x, double* out, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void min_max(const double* x, std::size_t n, double* lo, double* hi);
}  // namespace scalar

#if defined(PPA_HAVE_AVX2_KERNELS)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
double sum_squares(const double* a, std::size_t n);
void polyval(const double* coeffs, int degree, const double* x, double* out, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void min_max(const double* x, std::size_t n, double* lo, double* hi);
}  // namespace avx2
#endif

}  // namespace ppa::kernels
