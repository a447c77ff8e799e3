#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "ppa/error.hpp"

namespace ppa {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// d x n sample matrix, one sample per column. All entries are finite.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(Matrix values);

  Eigen::Index dims() const { return values_.rows(); }
  Eigen::Index samples() const { return values_.cols(); }

  const Matrix& values() const { return values_; }
  auto col(Eigen::Index k) const { return values_.col(k); }

  // Subset of columns, in the given order.
  DataMatrix columns(const std::vector<Eigen::Index>& idx) const;

 private:
  Matrix values_;
};

bool all_finite(const Matrix& m);

}  // namespace ppa
