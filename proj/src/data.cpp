#include "ppa/data.hpp"

#include <cmath>
#include <numbers>

#include "ppa/random.hpp"

namespace ppa {

const char* to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::Parabola2d: return "parabola2d";
    case SyntheticKind::Helix3d: return "helix3d";
    case SyntheticKind::Helix4d: return "helix4d";
  }
  return "unknown";
}

SyntheticKind parse_synthetic_kind(const std::string& name) {
  if (name == "parabola2d") return SyntheticKind::Parabola2d;
  if (name == "helix3d") return SyntheticKind::Helix3d;
  if (name == "helix4d") return SyntheticKind::Helix4d;
  throw Error(ErrorKind::Parse, "unknown synthetic kind '" + name + "'");
}

void SyntheticSpec::validate() const {
  if (n < 10) throw Error(ErrorKind::OutOfRange, "synthetic datasets need n >= 10");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw Error(ErrorKind::OutOfRange, "noise sigma must be >= 0");
  if (kind != SyntheticKind::Parabola2d && a == 0.0) throw Error(ErrorKind::OutOfRange, "helix radius must be nonzero");
}

DataMatrix gen_parabola2d(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::uniform_real_distribution<double> xs(-kParabolaHalfWidth, kParabolaHalfWidth);
  std::normal_distribution<double> noise(0.0, 1.0);
  Matrix x(2, spec.n);
  for (Eigen::Index k = 0; k < spec.n; ++k) {
    const double u = xs(rng);
    const double eps = noise(rng);
    x(0, k) = u;
    x(1, k) = spec.curvature * u * u / 2.0 + spec.offset + spec.sigma * eps;
  }
  return DataMatrix(std::move(x));
}

namespace {

Matrix helix_points(const SyntheticSpec& spec, Rng& rng) {
  const double t_max = 2.0 * std::numbers::pi * kHelixTurns;
  std::uniform_real_distribution<double> ts(0.0, t_max);
  Matrix x(3, spec.n);
  for (Eigen::Index k = 0; k < spec.n; ++k) {
    const double t = ts(rng);
    x(0, k) = spec.a * std::cos(t);
    x(1, k) = spec.a * std::sin(t);
    x(2, k) = spec.b * t;
  }
  return x;
}

void add_noise(Matrix& x, double sigma, Rng& rng) {
  if (sigma == 0.0) return;
  std::normal_distribution<double> noise(0.0, sigma);
  for (Eigen::Index k = 0; k < x.cols(); ++k)
    for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, k) += noise(rng);
}

}  // namespace

DataMatrix gen_helix3d(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Matrix x = helix_points(spec, rng);
  add_noise(x, spec.sigma, rng);
  return DataMatrix(std::move(x));
}

EmbeddedHelix gen_helix4d(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const Matrix h = helix_points(spec, rng);
  Matrix padded = Matrix::Zero(4, spec.n);
  padded.topRows(3) = h;
  Rng rot_rng(derive_seed(spec.seed, 4));
  Matrix rotation = random_orthogonal(4, rot_rng);
  Matrix x = rotation * padded;
  add_noise(x, spec.sigma, rng);
  return {DataMatrix(std::move(x)), std::move(rotation)};
}

DataMatrix generate(const SyntheticSpec& spec) {
  switch (spec.kind) {
    case SyntheticKind::Parabola2d: return gen_parabola2d(spec);
    case SyntheticKind::Helix3d: return gen_helix3d(spec);
    case SyntheticKind::Helix4d: return gen_helix4d(spec).data;
  }
  throw Error(ErrorKind::OutOfRange, "unknown synthetic kind");
}

LabeledData gen_parabola_classes(double curvature, double offset, double sigma, Eigen::Index n_per_class,
                                 std::uint64_t seed) {
  SyntheticSpec base;
  base.kind = SyntheticKind::Parabola2d;
  base.curvature = curvature;
  base.sigma = sigma;
  base.n = n_per_class;
  base.seed = derive_seed(seed, 0);
  const DataMatrix c0 = gen_parabola2d(base);
  base.offset = offset;
  base.seed = derive_seed(seed, 1);
  const DataMatrix c1 = gen_parabola2d(base);

  Matrix x(2, 2 * n_per_class);
  std::vector<int> labels(static_cast<std::size_t>(2 * n_per_class));
  for (Eigen::Index k = 0; k < n_per_class; ++k) {
    x.col(2 * k) = c0.col(k);
    x.col(2 * k + 1) = c1.col(k);
    labels[static_cast<std::size_t>(2 * k)] = 0;
    labels[static_cast<std::size_t>(2 * k + 1)] = 1;
  }
  return {DataMatrix(std::move(x)), std::move(labels)};
}

Vector ColumnScaling::apply(const Eigen::Ref<const Vector>& x) const {
  Vector y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) y(i) = scale(i) == 0.0 ? 0.5 : (x(i) - min(i)) * scale(i);
  return y;
}

Vector ColumnScaling::invert(const Eigen::Ref<const Vector>& y) const {
  Vector x(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) x(i) = scale(i) == 0.0 ? min(i) : y(i) / scale(i) + min(i);
  return x;
}

ColumnScaling fit_scaling(const DataMatrix& x) {
  ColumnScaling s;
  s.min = x.values().rowwise().minCoeff();
  const Vector max = x.values().rowwise().maxCoeff();
  s.scale.resize(x.dims());
  for (Eigen::Index i = 0; i < x.dims(); ++i) {
    const double range = max(i) - s.min(i);
    s.scale(i) = range > 0.0 ? 1.0 / range : 0.0;
  }
  return s;
}

DataMatrix apply_scaling(const ColumnScaling& s, const DataMatrix& x) {
  Matrix y(x.dims(), x.samples());
  for (Eigen::Index k = 0; k < x.samples(); ++k) y.col(k) = s.apply(x.col(k));
  return DataMatrix(std::move(y));
}

DataMatrix invert_scaling(const ColumnScaling& s, const DataMatrix& y) {
  Matrix x(y.dims(), y.samples());
  for (Eigen::Index k = 0; k < y.samples(); ++k) x.col(k) = s.invert(y.col(k));
  return DataMatrix(std::move(x));
}

Split split(const DataMatrix& x, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw Error(ErrorKind::OutOfRange, "split fraction must be in (0,1)");
  const Eigen::Index n = x.samples();
  const auto n_train = static_cast<Eigen::Index>(std::floor(fraction * static_cast<double>(n)));
  if (n_train < 1 || n_train >= n) throw Error(ErrorKind::InsufficientSamples, "split leaves an empty side");
  Rng rng(seed);
  const auto perm = random_permutation(n, rng);
  Split out;
  out.train_idx.assign(perm.begin(), perm.begin() + n_train);
  out.test_idx.assign(perm.begin() + n_train, perm.end());
  out.train = x.columns(out.train_idx);
  out.test = x.columns(out.test_idx);
  return out;
}

}  // namespace ppa
