#include "ppa/infotheory.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "ppa/kernels.hpp"

namespace ppa {

EntropyEstimate marginal_entropy(const Eigen::Ref<const Vector>& z) {
  const Eigen::Index n = z.size();
  if (n < kMinEntropySamples) {
    throw Error(ErrorKind::InsufficientSamples, "entropy estimate needs at least 30 samples");
  }
  if (!z.allFinite()) throw Error(ErrorKind::InvalidData, "non-finite sample");

  EntropyEstimate out;
  out.samples = n;
  out.bins = static_cast<Eigen::Index>(std::ceil(std::sqrt(static_cast<double>(n))));

  const Vector buf = z;  // contiguous copy for the kernel
  double lo = 0.0;
  double hi = 0.0;
  kernels::active().min_max(buf.data(), static_cast<std::size_t>(n), &lo, &hi);
  const double range = hi - lo;
  if (!(range > 0.0)) {
    out.degenerate = true;
    out.bits = -std::numeric_limits<double>::infinity();
    return out;
  }

  std::vector<Eigen::Index> counts(static_cast<std::size_t>(out.bins), 0);
  const double scale = static_cast<double>(out.bins) / range;
  for (Eigen::Index k = 0; k < n; ++k) {
    auto b = static_cast<Eigen::Index>((buf(k) - lo) * scale);
    if (b >= out.bins) b = out.bins - 1;
    if (b < 0) b = 0;
    ++counts[static_cast<std::size_t>(b)];
  }

  const double nn = static_cast<double>(n);
  double h = 0.0;
  Eigen::Index occupied = 0;
  for (Eigen::Index c : counts) {
    if (c == 0) continue;
    ++occupied;
    const double p = static_cast<double>(c) / nn;
    h -= p * std::log2(p);
  }
  h += static_cast<double>(occupied - 1) / (2.0 * nn * std::log(2.0));
  h += std::log2(range / static_cast<double>(out.bins));
  out.bits = h;
  return out;
}

MultiInfoReduction multi_info_reduction(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Matrix>& y,
                                        double log_det_term) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "input and transformed data must have the same shape");
  }
  MultiInfoReduction out;
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    const EntropyEstimate hx = marginal_entropy(x.row(j).transpose());
    const EntropyEstimate hy = marginal_entropy(y.row(j).transpose());
    out.degenerate = out.degenerate || hx.degenerate || hy.degenerate;
    out.input_entropy_sum += hx.bits;
    out.output_entropy_sum += hy.bits;
  }
  out.bits_per_dim =
      (out.input_entropy_sum - out.output_entropy_sum + log_det_term) / static_cast<double>(x.rows());
  return out;
}

}  // namespace ppa
