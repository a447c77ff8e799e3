#pragma once

#include "ppa/types.hpp"

namespace ppa {

struct Centered {
  Matrix values;
  Vector mean;
};

// Subtracts the per-dimension empirical mean. Requires n >= 2.
Centered center(const DataMatrix& x);

// Eigen-split of a centered sample: leading direction and the orthonormal
// complement spanned by the remaining covariance eigenvectors.
//
// Eigenvectors are sorted by decreasing eigenvalue; each has its
// largest-magnitude entry made positive. Eigenvalues equal to within
// 1e-12 relative are ordered by lexicographically decreasing entries.
struct LeadingSplit {
  Vector leading;         // m
  RowMatrix complement;   // (m-1) x m, rows orthonormal and orthogonal to leading
  Vector eigenvalues;     // m, decreasing (sample covariance, 1/(n-1))
};

LeadingSplit pca_split(const Matrix& centered);

// Full eigenbasis behind pca_split: columns are sign-fixed eigenvectors in
// decreasing-eigenvalue order.
struct EigenBasis {
  Matrix vectors;
  Vector values;
};

EigenBasis covariance_eigenbasis(const Matrix& centered);

// Linear baseline with the same conventions as the PPA steps.
class PcaModel {
 public:
  PcaModel() = default;
  PcaModel(Vector mean, Matrix components, Vector variances);

  Eigen::Index dims() const { return mean_.size(); }
  const Vector& mean() const { return mean_; }
  const Matrix& components() const { return components_; }
  const Vector& variances() const { return variances_; }

  Vector project(const Eigen::Ref<const Vector>& x) const;
  Vector unproject(const Eigen::Ref<const Vector>& coords) const;
  // Keeps the first `keep` coordinates, zeroes the rest.
  Vector reconstruct(const Eigen::Ref<const Vector>& x, Eigen::Index keep) const;

 private:
  Vector mean_;
  Matrix components_;
  Vector variances_;
};

PcaModel fit_pca(const DataMatrix& x);

// Mean squared input-domain error when only the first `keep` components are kept.
double truncation_mse(const PcaModel& model, const DataMatrix& x, Eigen::Index keep);

}  // namespace ppa
