#include "ppa/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

namespace ppa {
namespace {

void fix_sign(Eigen::Ref<Vector> v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0.0) v = -v;
}

bool lexicographically_greater(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) > b(i);
  }
  return false;
}

}  // namespace

Centered center(const DataMatrix& x) {
  if (x.samples() < 2) {
    throw Error(ErrorKind::InsufficientSamples, "centering needs at least 2 samples");
  }
  Centered out;
  out.mean = x.values().rowwise().mean();
  out.values = x.values().colwise() - out.mean;
  return out;
}

EigenBasis covariance_eigenbasis(const Matrix& centered) {
  const Eigen::Index m = centered.rows();
  const Eigen::Index n = centered.cols();
  if (n < 2) throw Error(ErrorKind::InsufficientSamples, "covariance needs at least 2 samples");
  if (!centered.allFinite()) throw Error(ErrorKind::InvalidData, "non-finite sample");

  const Matrix cov = (centered * centered.transpose()) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::RankDeficient, "covariance eigendecomposition failed");
  }
  const Vector& raw_values = solver.eigenvalues();
  const double top = raw_values.cwiseAbs().maxCoeff();
  if (!(top > 0.0)) {
    throw Error(ErrorKind::RankDeficient, "sample covariance is zero (all samples identical)");
  }

  std::vector<Vector> vecs;
  vecs.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    Vector v = solver.eigenvectors().col(j);
    fix_sign(v);
    vecs.push_back(std::move(v));
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const double tie = 1e-12 * top;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double la = raw_values(a);
    const double lb = raw_values(b);
    if (std::abs(la - lb) > tie) return la > lb;
    return lexicographically_greater(vecs[static_cast<std::size_t>(a)], vecs[static_cast<std::size_t>(b)]);
  });

  EigenBasis out;
  out.vectors.resize(m, m);
  out.values.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto src = order[static_cast<std::size_t>(j)];
    out.vectors.col(j) = vecs[static_cast<std::size_t>(src)];
    out.values(j) = raw_values(src);
  }
  return out;
}

LeadingSplit pca_split(const Matrix& centered) {
  if (centered.rows() < 2) throw Error(ErrorKind::DimensionMismatch, "split needs dimension >= 2");
  EigenBasis basis = covariance_eigenbasis(centered);
  LeadingSplit out;
  out.leading = basis.vectors.col(0);
  out.complement = basis.vectors.rightCols(basis.vectors.cols() - 1).transpose();
  out.eigenvalues = std::move(basis.values);
  return out;
}

PcaModel::PcaModel(Vector mean, Matrix components, Vector variances)
    : mean_(std::move(mean)), components_(std::move(components)), variances_(std::move(variances)) {}

Vector PcaModel::project(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dims()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from model");
  return components_.transpose() * (x - mean_);
}

Vector PcaModel::unproject(const Eigen::Ref<const Vector>& coords) const {
  if (coords.size() != dims()) throw Error(ErrorKind::DimensionMismatch, "coordinate dimension differs from model");
  return components_ * coords + mean_;
}

Vector PcaModel::reconstruct(const Eigen::Ref<const Vector>& x, Eigen::Index keep) const {
  if (keep < 1 || keep > dims()) throw Error(ErrorKind::OutOfRange, "kept dimensions out of range");
  Vector c = project(x);
  c.tail(dims() - keep).setZero();
  return unproject(c);
}

PcaModel fit_pca(const DataMatrix& x) {
  Centered c = center(x);
  EigenBasis basis = covariance_eigenbasis(c.values);
  Vector variances = basis.values.cwiseMax(0.0);
  return PcaModel(std::move(c.mean), std::move(basis.vectors), std::move(variances));
}

double truncation_mse(const PcaModel& model, const DataMatrix& x, Eigen::Index keep) {
  if (x.dims() != model.dims()) throw Error(ErrorKind::DimensionMismatch, "data dimension differs from model");
  if (keep < 1 || keep > model.dims()) throw Error(ErrorKind::OutOfRange, "kept dimensions out of range");
  double total = 0.0;
  for (Eigen::Index k = 0; k < x.samples(); ++k) {
    total += (x.col(k) - model.reconstruct(x.col(k), keep)).squaredNorm();
  }
  return total / static_cast<double>(x.samples());
}

}  // namespace ppa
