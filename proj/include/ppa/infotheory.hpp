#pragma once

#include <string>

#include "ppa/types.hpp"

namespace ppa {

inline constexpr Eigen::Index kMinEntropySamples = 30;

struct EntropyEstimate {
  double bits = 0.0;          // -inf when degenerate
  std::string estimator = "histogram-mm";
  Eigen::Index samples = 0;
  Eigen::Index bins = 0;
  bool degenerate = false;    // constant input
};

// Differential entropy (bits) of a 1-d sample: equal-width histogram over
// [min, max] with ceil(sqrt(n)) bins, plug-in entropy with the Miller-Madow
// correction (occupied_bins - 1) / (2 n ln 2), plus log2(bin width).
EntropyEstimate marginal_entropy(const Eigen::Ref<const Vector>& z);

struct MultiInfoReduction {
  double bits_per_dim = 0.0;
  double input_entropy_sum = 0.0;
  double output_entropy_sum = 0.0;
  bool degenerate = false;
};

// (sum_j h(X^j) - sum_j h(Y^j) + log_det_term) / d, with X and Y d x n.
// Volume-preserving transforms (PPA, PCA) pass log_det_term = 0.
MultiInfoReduction multi_info_reduction(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Matrix>& y,
                                        double log_det_term = 0.0);

}  // namespace ppa
