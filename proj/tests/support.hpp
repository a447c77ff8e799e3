#pragma once

// Shared fixtures and independent reference computations for the tests.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ppa/data.hpp"
#include "ppa/model.hpp"
#include "ppa/random.hpp"

namespace ppa::test {

inline double rel_error(const Matrix& got, const Matrix& want) {
  const double scale = std::max(want.norm(), 1e-300);
  return (got - want).norm() / scale;
}

// Central differences of a vector-valued map, column j = df/dx_j.
inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x, double h = 1e-6) {
  const Vector f0 = f(x);
  Matrix j(f0.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    j.col(i) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return j;
}

inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double h = 1e-6) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

// Least squares through the normal equations with a QR-free dense solve;
// agrees with the SVD route on well-conditioned problems.
inline Matrix normal_equations_fit(const Matrix& targets, const Matrix& vander) {
  const Matrix gram = vander * vander.transpose();
  return (targets * vander.transpose()) * gram.inverse();
}

// Covariance eigenpairs through the SVD of the centered data.
inline std::pair<Matrix, Vector> svd_eigen(const Matrix& centered) {
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeThinU);
  const Vector values = svd.singularValues().array().square() / static_cast<double>(centered.cols() - 1);
  return {svd.matrixU(), values};
}

inline DataMatrix parabola(double curvature, double sigma, Eigen::Index n, std::uint64_t seed) {
  SyntheticSpec s;
  s.kind = SyntheticKind::Parabola2d;
  s.curvature = curvature;
  s.sigma = sigma;
  s.n = n;
  s.seed = seed;
  return gen_parabola2d(s);
}

inline DataMatrix helix3(double a, double b, double sigma, Eigen::Index n, std::uint64_t seed) {
  SyntheticSpec s;
  s.kind = SyntheticKind::Helix3d;
  s.a = a;
  s.b = b;
  s.sigma = sigma;
  s.n = n;
  s.seed = seed;
  return gen_helix3d(s);
}

inline EmbeddedHelix helix4(double a, double b, double sigma, Eigen::Index n, std::uint64_t seed) {
  SyntheticSpec s;
  s.kind = SyntheticKind::Helix4d;
  s.a = a;
  s.b = b;
  s.sigma = sigma;
  s.n = n;
  s.seed = seed;
  return gen_helix4d(s);
}

inline DataMatrix gaussian(const Matrix& cov, Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> nd;
  const Matrix l = Eigen::LLT<Matrix>(cov).matrixL();
  Matrix z(cov.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < cov.rows(); ++i) z(i, k) = nd(rng);
  return DataMatrix(l * z);
}

// Smooth nonlinear cloud in d dims: a quadratic curve with sheared noise.
inline DataMatrix curved_cloud(Eigen::Index d, Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::normal_distribution<double> nd(0.0, 0.1);
  const Matrix rot = random_orthogonal(d, rng);
  Matrix x(d, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = u(rng);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double s = 1.0 / static_cast<double>(i + 1);
      x(i, k) = (i == 0 ? 2.0 * t : s * std::sin(static_cast<double>(i) * t) + 0.4 * t * t) + nd(rng);
    }
  }
  return DataMatrix(rot * x);
}

inline FitConfig fixed_degree(int g) {
  FitConfig c;
  c.degree = DegreePolicy::fixed(g);
  return c;
}

}  // namespace ppa::test
