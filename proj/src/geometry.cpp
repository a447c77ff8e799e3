#include "ppa/geometry.hpp"

#include <cmath>

namespace ppa {

Matrix step_jacobian(const PpaStep& step, const Eigen::Ref<const Vector>& xprev) {
  const Eigen::Index m = step.input_dim();
  if (xprev.size() != m) throw Error(ErrorKind::DimensionMismatch, "point does not match the step input");
  const double alpha = step.leading.dot(xprev);
  const Vector u = step.coeffs * monomial_derivative(alpha, step.degree, 1);
  Matrix block(m, m);
  block.row(0) = step.leading.transpose();
  block.bottomRows(m - 1) = step.complement - u * step.leading.transpose();
  return block;
}

JacobianMatrix full_jacobian(const PpaModel& model, const Eigen::Ref<const Vector>& x) {
  const Eigen::Index d = model.dims();
  if (x.size() != d) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from model");
  JacobianMatrix out;
  out.point = x;
  out.jacobian = Matrix::Identity(d, d);
  Vector cur = x - model.mean();
  Vector next;
  for (const PpaStep& step : model.steps()) {
    const Eigen::Index m = step.input_dim();
    const Matrix block = step_jacobian(step, cur);
    out.jacobian.bottomRows(m) = (block * out.jacobian.bottomRows(m)).eval();
    next.resize(step.output_dim());
    step_forward(step, cur.data(), next.data());
    std::swap(cur, next);
  }
  Eigen::PartialPivLU<Matrix> lu(out.jacobian);
  const Matrix& packed = lu.matrixLU();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) log_det += std::log(std::abs(packed(i, i)));
  out.log_abs_det = log_det;
  return out;
}

Vector whitened_variances(const PpaModel& model, const DataMatrix& x) {
  if (x.samples() < 2) throw Error(ErrorKind::InsufficientSamples, "variances need at least 2 samples");
  const Matrix r = forward(model, x);
  const Vector mean = r.rowwise().mean();
  const Vector var = (r.colwise() - mean).rowwise().squaredNorm() / static_cast<double>(r.cols() - 1);
  return var.cwiseMax(kVarianceFloor);
}

MetricTensor metric_tensor(const PpaModel& model, const Eigen::Ref<const Vector>& x,
                           const Eigen::Ref<const Vector>& variances) {
  if (variances.size() != model.dims()) throw Error(ErrorKind::DimensionMismatch, "variances dimension mismatch");
  if (!(variances.minCoeff() > 0.0)) throw Error(ErrorKind::OutOfRange, "metric variances must be positive");
  const Matrix j = full_jacobian(model, x).jacobian;
  MetricTensor out;
  out.variances = variances;
  const Matrix m = j.transpose() * variances.cwiseInverse().asDiagonal() * j;
  out.metric = 0.5 * (m + m.transpose());
  return out;
}

double squared_distance(const PpaModel& model, const Eigen::Ref<const Vector>& x,
                        const Eigen::Ref<const Vector>& dx, const Eigen::Ref<const Vector>& variances) {
  if (dx.size() != model.dims()) throw Error(ErrorKind::DimensionMismatch, "displacement dimension mismatch");
  const MetricTensor mt = metric_tensor(model, x, variances);
  return std::max(0.0, dx.dot(mt.metric * dx));
}

std::vector<Vector> principal_curve(const PpaModel& model, const std::vector<double>& alpha_grid) {
  std::vector<Vector> out;
  out.reserve(alpha_grid.size());
  Vector r = Vector::Zero(model.dims());
  for (double a : alpha_grid) {
    r(0) = a;
    out.push_back(reconstruct_truncated(model, r, 1));
  }
  return out;
}

std::vector<std::pair<Vector, Vector>> principal_grid(const PpaModel& model, int dims,
                                                      const std::vector<double>& axis) {
  if (dims < 1 || dims > model.dims()) throw Error(ErrorKind::OutOfRange, "grid dimensions must be in [1, d]");
  if (axis.empty()) throw Error(ErrorKind::OutOfRange, "empty grid axis");
  std::vector<std::pair<Vector, Vector>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(dims), 0);
  while (true) {
    Vector r = Vector::Zero(model.dims());
    for (int i = 0; i < dims; ++i) r(i) = axis[idx[static_cast<std::size_t>(i)]];
    out.emplace_back(r.head(dims), reconstruct_truncated(model, r, dims));
    int pos = dims - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == axis.size()) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

Vector curve_derivative(const PpaModel& model, double alpha, int order) {
  if (order < 1) throw Error(ErrorKind::OutOfRange, "derivative order must be >= 1");
  const PpaStep& s = model.steps().front();
  Vector out = s.complement.transpose() * (s.coeffs * monomial_derivative(alpha, s.degree, order));
  if (order == 1) out += s.leading;
  return out;
}

namespace {

// Unit standard axis, orthogonalized against the first `used` columns, with
// the largest remaining component (lowest index on ties).
Vector completion_vector(const Matrix& basis, Eigen::Index used) {
  const Eigen::Index d = basis.rows();
  Vector best;
  double best_norm = -1.0;
  for (Eigen::Index a = 0; a < d; ++a) {
    Vector v = Vector::Unit(d, a);
    for (Eigen::Index j = 0; j < used; ++j) v -= basis.col(j) * basis.col(j).dot(v);
    for (Eigen::Index j = 0; j < used; ++j) v -= basis.col(j) * basis.col(j).dot(v);
    const double nv = v.norm();
    if (nv > best_norm + 1e-12) {
      best_norm = nv;
      best = v;
    }
  }
  return best / best_norm;
}

constexpr double kParallelTolerance = 1e-12;

}  // namespace

FrenetFrame frenet_frame(const PpaModel& model, double alpha) {
  const Eigen::Index d = model.dims();
  FrenetFrame out;
  out.alpha = alpha;
  out.point = principal_curve(model, {alpha}).front();

  // Tangent from the inverse Jacobian at the curve point.
  const JacobianMatrix jac = full_jacobian(model, out.point);
  Eigen::PartialPivLU<Matrix> lu(jac.jacobian);
  const Vector tangent = lu.solve(Vector::Unit(d, 0));
  out.speed = tangent.norm();
  if (!(out.speed > 1e-12 * std::max(1.0, out.point.norm()))) {
    throw Error(ErrorKind::DegenerateFrame, "curve speed vanishes at alpha = " + std::to_string(alpha));
  }

  std::vector<Vector> derivs;
  derivs.push_back(tangent);
  for (int k = 2; k <= d; ++k) derivs.push_back(curve_derivative(model, alpha, k));

  // Gram-Schmidt (twice) on c', c'', ..., c^(d).
  out.frame = Matrix::Zero(d, d);
  Vector norms = Vector::Zero(d);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < d; ++k) {
    Vector v = derivs[static_cast<std::size_t>(k)];
    const double raw = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < rank; ++j) v -= out.frame.col(j) * out.frame.col(j).dot(v);
    const double nv = v.norm();
    if (rank < k || raw == 0.0 || nv <= kParallelTolerance * raw) break;
    norms(k) = nv;
    if (k < d - 1) out.frame.col(k) = v / nv;
    ++rank;
  }

  const Eigen::Index filled = std::min<Eigen::Index>(rank, d - 1);
  for (Eigen::Index j = filled; j < d; ++j) out.frame.col(j) = completion_vector(out.frame, j);
  if (out.frame.determinant() < 0.0) out.frame.col(d - 1) = -out.frame.col(d - 1);

  out.curvatures = Vector::Zero(d - 1);
  for (Eigen::Index k = 0; k + 1 < d; ++k) {
    if (norms(k) > 0.0 && norms(k + 1) > 0.0) out.curvatures(k) = norms(k + 1) / (norms(k) * norms(0));
  }
  if (d >= 3 && norms(d - 1) > 0.0) {
    Matrix stack(d, d);
    for (Eigen::Index k = 0; k < d; ++k) stack.col(k) = derivs[static_cast<std::size_t>(k)];
    if (stack.determinant() < 0.0) out.curvatures(d - 2) = -out.curvatures(d - 2);
  }
  return out;
}

std::pair<double, double> helix_reference_curvatures(double a, double b) {
  if (a == 0.0) throw Error(ErrorKind::OutOfRange, "helix radius must be nonzero (a = 0 is a straight line)");
  const double denom = a * a + b * b;
  return {std::abs(a) / denom, b / denom};
}

}  // namespace ppa
