#include "ppa/types.hpp"

#include <utility>

namespace ppa {

bool all_finite(const Matrix& m) { return m.allFinite(); }

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  if (!values_.allFinite()) {
    throw Error(ErrorKind::InvalidData, "data matrix contains non-finite entries");
  }
}

DataMatrix DataMatrix::columns(const std::vector<Eigen::Index>& idx) const {
  Matrix out(values_.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = values_.col(idx[k]);
  return DataMatrix(std::move(out));
}

}  // namespace ppa
