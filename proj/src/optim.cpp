#include "ppa/optim.hpp"

#include <cmath>
#include <utility>

#include "ppa/random.hpp"

namespace ppa {
namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-14;

struct Evaluation {
  double cost = 0.0;
  Vector gradient;
};

Vector unit(const Eigen::Ref<const Vector>& e) {
  const double n = e.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::InvalidData, "leading vector must be nonzero");
  return e / n;
}

Evaluation evaluate(const Eigen::Ref<const Vector>& e_in, const Eigen::Ref<const Matrix>& x, int degree,
                    bool with_gradient) {
  if (e_in.size() != x.rows()) throw Error(ErrorKind::DimensionMismatch, "leading vector and data disagree");
  const Vector e = unit(e_in);
  const Eigen::Index n = x.cols();
  const RowMatrix basis = complement_basis(e);

  const Vector alphas = x.transpose() * e;
  const Matrix projected = basis * x;
  const Matrix vander = vandermonde(alphas, degree);
  const PolynomialFit fit = fit_polynomial(projected, vander);
  const Matrix residual = projected - fit.coeffs * vander;

  Evaluation out;
  out.cost = residual.squaredNorm() / static_cast<double>(n);
  if (!with_gradient) return out;

  // Slope of the fitted polynomial at every sample: W D V.
  const DerivativeOperator deriv(degree);
  const Matrix slope = fit.coeffs * (deriv.matrix() * vander);
  const Vector weights = (residual.cwiseProduct(slope)).colwise().sum().transpose();
  Vector g = -(2.0 / static_cast<double>(n)) * (x * weights);
  g -= e * e.dot(g);
  out.gradient = std::move(g);
  return out;
}

DescentResult descend(const Eigen::Ref<const Matrix>& x, int degree, const Vector& init, const DescentOptions& opts) {
  DescentResult res;
  Vector e = unit(init);
  Evaluation cur = evaluate(e, x, degree, true);
  res.initial_cost = cur.cost;
  res.trace.push_back(cur.cost);
  double step = opts.initial_step;

  int it = 0;
  for (; it < opts.max_iters; ++it) {
    const double gnorm = cur.gradient.norm();
    if (gnorm < opts.gradient_tolerance) {
      res.converged = true;
      break;
    }
    const Vector dir = -cur.gradient / gnorm;
    bool accepted = false;
    while (step >= kMinStep) {
      Vector trial = (e + step * dir).normalized();
      const double c = evaluate(trial, x, degree, false).cost;
      if (c <= cur.cost - kArmijo * step * gnorm) {
        e = std::move(trial);
        cur = evaluate(e, x, degree, true);
        res.trace.push_back(cur.cost);
        accepted = true;
        break;
      }
      step *= opts.backtracking;
    }
    if (!accepted) {
      res.converged = true;
      break;
    }
    step = std::min(opts.initial_step, step / opts.backtracking);
  }
  res.iterations = it;
  res.leading = std::move(e);
  res.cost = cur.cost;
  return res;
}

}  // namespace

void DescentOptions::validate() const {
  if (max_iters < 0 || !(initial_step > 0.0) || !(backtracking > 0.0 && backtracking < 1.0) ||
      !(gradient_tolerance > 0.0) || gradient_tolerance >= initial_step || restarts < 0) {
    throw Error(ErrorKind::OutOfRange, "invalid descent options");
  }
}

RowMatrix complement_basis(const Eigen::Ref<const Vector>& e_in) {
  const Vector e = unit(e_in);
  const Eigen::Index m = e.size();
  if (m < 2) throw Error(ErrorKind::DimensionMismatch, "complement needs dimension >= 2");
  Vector w = e;
  w(0) += e(0) >= 0.0 ? 1.0 : -1.0;
  const double ww = w.squaredNorm();
  RowMatrix h = RowMatrix::Identity(m, m);
  h.noalias() -= (2.0 / ww) * (w * w.transpose());
  return h.bottomRows(m - 1);
}

double cost(const Eigen::Ref<const Vector>& e, const Eigen::Ref<const Matrix>& x, int degree) {
  return evaluate(e, x, degree, false).cost;
}

Vector cost_gradient(const Eigen::Ref<const Vector>& e, const Eigen::Ref<const Matrix>& x, int degree) {
  return evaluate(e, x, degree, true).gradient;
}

DescentResult optimize_leading(const Eigen::Ref<const Matrix>& x, int degree, const Eigen::Ref<const Vector>& init,
                               const DescentOptions& opts) {
  opts.validate();
  DescentResult best = descend(x, degree, init, opts);
  if (opts.restarts > 0) {
    Rng rng(derive_seed(opts.seed, 0x5eed));
    for (int r = 0; r < opts.restarts; ++r) {
      const Vector start = random_unit_vector(x.rows(), rng);
      DescentResult alt = descend(x, degree, start, opts);
      if (alt.cost < best.cost) {
        alt.initial_cost = best.initial_cost;
        best = std::move(alt);
      }
    }
  }
  return best;
}

}  // namespace ppa
