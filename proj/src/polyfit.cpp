#include "ppa/polyfit.hpp"

#include <limits>
#include <string>

namespace ppa {

Matrix vandermonde(const Eigen::Ref<const Vector>& alphas, int degree) {
  if (degree < 1) throw Error(ErrorKind::OutOfRange, "polynomial degree must be >= 1");
  if (!alphas.allFinite()) throw Error(ErrorKind::InvalidData, "non-finite projection");
  Matrix v(degree + 1, alphas.size());
  for (Eigen::Index k = 0; k < alphas.size(); ++k) {
    double p = 1.0;
    for (int j = 0; j <= degree; ++j) {
      v(j, k) = p;
      p *= alphas(k);
    }
  }
  return v;
}

PolynomialFit fit_polynomial(const Eigen::Ref<const Matrix>& targets, const Eigen::Ref<const Matrix>& vander) {
  const Eigen::Index terms = vander.rows();
  const Eigen::Index n = vander.cols();
  if (targets.cols() != n) throw Error(ErrorKind::DimensionMismatch, "targets and Vandermonde disagree on n");
  if (n < terms) {
    throw Error(ErrorKind::InsufficientSamples,
                "need at least " + std::to_string(terms) + " samples for degree " + std::to_string(terms - 1));
  }

  PolynomialFit out;
  // Solve V^T W^T = targets^T in the least-squares sense.
  Eigen::BDCSVD<Matrix> svd(vander.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kPinvCutoff);
  const Vector& s = svd.singularValues();
  out.condition = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
  if (targets.rows() == 0) {
    out.coeffs = RowMatrix::Zero(0, terms);
    return out;
  }
  out.coeffs = svd.solve(targets.transpose()).transpose();
  return out;
}

DerivativeOperator::DerivativeOperator(int degree) : degree_(degree), d_(Matrix::Zero(degree + 1, degree + 1)) {
  if (degree < 0) throw Error(ErrorKind::OutOfRange, "negative degree");
  for (int j = 1; j <= degree; ++j) d_(j, j - 1) = static_cast<double>(j);
}

Vector monomials(double a, int degree) {
  Vector v(degree + 1);
  double p = 1.0;
  for (int j = 0; j <= degree; ++j) {
    v(j) = p;
    p *= a;
  }
  return v;
}

Vector monomial_derivative(double a, int degree, int order) {
  Vector v = Vector::Zero(degree + 1);
  for (int j = order; j <= degree; ++j) {
    double falling = 1.0;
    for (int i = 0; i < order; ++i) falling *= static_cast<double>(j - i);
    double p = 1.0;
    for (int i = 0; i < j - order; ++i) p *= a;
    v(j) = falling * p;
  }
  return v;
}

}  // namespace ppa
