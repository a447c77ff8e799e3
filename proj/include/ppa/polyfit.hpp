#pragma once

#include "ppa/types.hpp"

namespace ppa {

// (degree+1) x n matrix; column k is [1, a_k, a_k^2, ..., a_k^degree].
Matrix vandermonde(const Eigen::Ref<const Vector>& alphas, int degree);

// Relative singular-value cutoff of the least-squares pseudoinverse.
inline constexpr double kPinvCutoff = 1e-12;
// Vandermonde condition number above which fitting records a warning.
inline constexpr double kConditionWarning = 1e12;

struct PolynomialFit {
  RowMatrix coeffs;  // rows = output dims, cols = degree+1 (constant term first)
  double condition;  // sigma_max / sigma_min of the Vandermonde matrix
};

// Least-squares coefficients W = targets * pinv(V), computed by SVD with
// singular values below kPinvCutoff * sigma_max discarded.
PolynomialFit fit_polynomial(const Eigen::Ref<const Matrix>& targets, const Eigen::Ref<const Matrix>& vander);

// Maps v(a) = [1, a, ..., a^g] onto its derivative [0, 1, 2a, ..., g a^(g-1)].
// Subdiagonal: D(j, j-1) = j.
class DerivativeOperator {
 public:
  explicit DerivativeOperator(int degree);

  int degree() const { return degree_; }
  const Matrix& matrix() const { return d_; }
  Vector apply(const Eigen::Ref<const Vector>& v) const { return d_ * v; }

 private:
  int degree_;
  Matrix d_;
};

// [1, a, ..., a^g]
Vector monomials(double a, int degree);

// k-th derivative of the monomial vector at a: entries j!/(j-k)! a^(j-k).
Vector monomial_derivative(double a, int degree, int order);

}  // namespace ppa
