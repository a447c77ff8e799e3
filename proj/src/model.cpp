#include "ppa/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "ppa/kernels.hpp"
#include "ppa/parallel.hpp"
#include "ppa/random.hpp"

namespace ppa {
namespace {

// Residual energy, relative to the centered input, below which the
// remaining steps are treated as degenerate.
constexpr double kDegenerateEnergy = 1e-28;
constexpr double kCvTieTolerance = 1e-10;

std::size_t usize(Eigen::Index i) { return static_cast<std::size_t>(i); }

PpaStep degenerate_step(Eigen::Index m) {
  PpaStep s;
  s.degree = 1;
  s.leading = Vector::Unit(m, 0);
  s.complement = RowMatrix::Identity(m, m).bottomRows(m - 1);
  s.coeffs = RowMatrix::Zero(m - 1, 2);
  return s;
}

void project_rows(const PpaStep& step, const Eigen::Ref<const Matrix>& x, Vector& alphas, Matrix& projected) {
  const auto& k = kernels::active();
  const Eigen::Index m = x.rows();
  const Eigen::Index n = x.cols();
  alphas.resize(n);
  projected.resize(step.output_dim(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double* xj = x.col(j).data();
    alphas(j) = k.dot(step.leading.data(), xj, usize(m));
    for (Eigen::Index i = 0; i < step.output_dim(); ++i) {
      projected(i, j) = k.dot(step.complement.row(i).data(), xj, usize(m));
    }
  }
}

void subtract_polynomial(const PpaStep& step, const Vector& alphas, Matrix& projected) {
  const auto& k = kernels::active();
  const Eigen::Index n = alphas.size();
  Vector poly(n);
  for (Eigen::Index i = 0; i < step.output_dim(); ++i) {
    k.polyval(step.coeffs.row(i).data(), step.degree, alphas.data(), poly.data(), usize(n));
    projected.row(i) -= poly.transpose();
  }
}

}  // namespace

const char* to_string(Strategy s) { return s == Strategy::PcaBased ? "pca-based" : "gradient-descent"; }

Strategy parse_strategy(std::string_view name) {
  if (name == "pca-based" || name == "pca") return Strategy::PcaBased;
  if (name == "gradient-descent" || name == "gd") return Strategy::GradientDescent;
  throw Error(ErrorKind::Parse, "unknown strategy '" + std::string(name) + "'");
}

void FitConfig::validate() const {
  if (degree.min_degree < 1 || degree.max_degree < degree.min_degree) {
    throw Error(ErrorKind::OutOfRange, "degree range must satisfy 1 <= min <= max");
  }
  if (!(cv_fraction > 0.0 && cv_fraction < 1.0)) throw Error(ErrorKind::OutOfRange, "cv fraction must be in (0,1)");
  descent.validate();
}

void PpaStep::check(double tol) const {
  const Eigen::Index m = input_dim();
  if (m < 2 || complement.rows() != m - 1 || complement.cols() != m || coeffs.rows() != m - 1 ||
      coeffs.cols() != degree + 1 || degree < 1) {
    throw Error(ErrorKind::InvalidData, "step shapes are inconsistent");
  }
  if (std::abs(leading.norm() - 1.0) > tol) throw Error(ErrorKind::InvalidData, "leading vector is not unit norm");
  if ((complement * leading).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorKind::InvalidData, "complement is not orthogonal to the leading vector");
  }
  if ((complement * complement.transpose() - Matrix::Identity(m - 1, m - 1)).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorKind::InvalidData, "complement rows are not orthonormal");
  }
}

double step_forward(const PpaStep& step, const double* x, double* residual) {
  const auto& k = kernels::active();
  const auto m = usize(step.input_dim());
  const double alpha = k.dot(step.leading.data(), x, m);
  for (Eigen::Index i = 0; i < step.output_dim(); ++i) {
    const double proj = k.dot(step.complement.row(i).data(), x, m);
    double poly = 0.0;
    k.polyval(step.coeffs.row(i).data(), step.degree, &alpha, &poly, 1);
    residual[i] = proj - poly;
  }
  return alpha;
}

void step_inverse(const PpaStep& step, double alpha, const double* residual, double* xprev) {
  const auto& k = kernels::active();
  const auto m = usize(step.input_dim());
  for (std::size_t j = 0; j < m; ++j) xprev[j] = step.leading(static_cast<Eigen::Index>(j)) * alpha;
  for (Eigen::Index i = 0; i < step.output_dim(); ++i) {
    double poly = 0.0;
    k.polyval(step.coeffs.row(i).data(), step.degree, &alpha, &poly, 1);
    k.axpy(residual[i] + poly, step.complement.row(i).data(), xprev, m);
  }
}

void step_forward_batch(const PpaStep& step, const Eigen::Ref<const Matrix>& x, Vector& alphas, Matrix& residual) {
  if (x.rows() != step.input_dim()) throw Error(ErrorKind::DimensionMismatch, "step input dimension mismatch");
  project_rows(step, x, alphas, residual);
  subtract_polynomial(step, alphas, residual);
}

PpaModel::PpaModel(Vector mean, std::vector<PpaStep> steps, Strategy strategy)
    : mean_(std::move(mean)), steps_(std::move(steps)), strategy_(strategy) {
  const Eigen::Index d = mean_.size();
  if (d < 2 || static_cast<Eigen::Index>(steps_.size()) != d - 1) {
    throw Error(ErrorKind::InvalidData, "model needs d-1 steps for dimension d >= 2");
  }
  for (std::size_t p = 0; p < steps_.size(); ++p) {
    if (steps_[p].input_dim() != d - static_cast<Eigen::Index>(p)) {
      throw Error(ErrorKind::InvalidData, "step " + std::to_string(p + 1) + " has the wrong input dimension");
    }
  }
}

std::vector<int> PpaModel::degrees() const {
  std::vector<int> out;
  out.reserve(steps_.size());
  for (const auto& s : steps_) out.push_back(s.degree);
  return out;
}

StepFit fit_step_with_basis(const Eigen::Ref<const Matrix>& xprev, Vector leading, RowMatrix complement, int degree) {
  const Eigen::Index m = xprev.rows();
  if (m < 2) throw Error(ErrorKind::DimensionMismatch, "a step needs input dimension >= 2");
  if (leading.size() != m || complement.rows() != m - 1 || complement.cols() != m) {
    throw Error(ErrorKind::DimensionMismatch, "basis does not match the residual dimension");
  }
  if (xprev.cols() < degree + 1) {
    throw Error(ErrorKind::InsufficientSamples, "degree " + std::to_string(degree) + " needs at least " +
                                                    std::to_string(degree + 1) + " samples");
  }
  StepFit out;
  out.step.leading = std::move(leading);
  out.step.complement = std::move(complement);
  out.step.degree = degree;
  project_rows(out.step, xprev, out.alphas, out.residual);
  const PolynomialFit fit = fit_polynomial(out.residual, vandermonde(out.alphas, degree));
  out.step.coeffs = fit.coeffs;
  out.condition = fit.condition;
  subtract_polynomial(out.step, out.alphas, out.residual);
  return out;
}

StepFit fit_step(const Eigen::Ref<const Matrix>& xprev, int degree, Strategy strategy, const DescentOptions& opts) {
  LeadingSplit split = pca_split(xprev);
  if (strategy == Strategy::PcaBased) {
    return fit_step_with_basis(xprev, std::move(split.leading), std::move(split.complement), degree);
  }
  DescentResult best = optimize_leading(xprev, degree, split.leading, opts);
  RowMatrix basis = complement_basis(best.leading);
  return fit_step_with_basis(xprev, std::move(best.leading), std::move(basis), degree);
}

DegreeSelection select_degree(const Eigen::Ref<const Matrix>& xprev, int min_degree, int max_degree,
                              double cv_fraction, std::uint64_t seed) {
  LeadingSplit split = pca_split(xprev);
  return select_degree(xprev, split.leading, split.complement, min_degree, max_degree, cv_fraction, seed);
}

DegreeSelection select_degree(const Eigen::Ref<const Matrix>& xprev, const Vector& leading,
                              const RowMatrix& complement, int min_degree, int max_degree, double cv_fraction,
                              std::uint64_t seed) {
  if (min_degree < 1 || max_degree < min_degree) throw Error(ErrorKind::OutOfRange, "invalid degree range");
  if (!(cv_fraction > 0.0 && cv_fraction < 1.0)) throw Error(ErrorKind::OutOfRange, "cv fraction must be in (0,1)");
  const Eigen::Index n = xprev.cols();
  const auto n_val = static_cast<Eigen::Index>(std::floor(cv_fraction * static_cast<double>(n)));
  const Eigen::Index n_fit = n - n_val;
  if (n_val < 1) throw Error(ErrorKind::InsufficientSamples, "validation split is empty");

  DegreeSelection out;
  int hi = max_degree;
  if (n_fit < hi + 1) {
    hi = static_cast<int>(n_fit) - 1;
    if (hi < min_degree) {
      throw Error(ErrorKind::InsufficientSamples,
                  "only " + std::to_string(n_fit) + " samples left for fitting degree " + std::to_string(min_degree));
    }
    out.warnings.push_back("degree range capped at " + std::to_string(hi) + " (only " + std::to_string(n_fit) +
                           " fitting samples)");
  }

  Rng rng(seed);
  const auto perm = random_permutation(n, rng);
  Vector a_fit(n_fit), a_val(n_val);
  Matrix p_fit(complement.rows(), n_fit), p_val(complement.rows(), n_val);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto col = perm[usize(k)];
    const double a = leading.dot(xprev.col(col));
    if (k < n_fit) {
      a_fit(k) = a;
      p_fit.col(k) = complement * xprev.col(col);
    } else {
      a_val(k - n_fit) = a;
      p_val.col(k - n_fit) = complement * xprev.col(col);
    }
  }
  const double val_energy = p_val.squaredNorm();

  double best = std::numeric_limits<double>::infinity();
  for (int g = min_degree; g <= hi; ++g) {
    const PolynomialFit fit = fit_polynomial(p_fit, vandermonde(a_fit, g));
    const double err = (p_val - fit.coeffs * vandermonde(a_val, g)).squaredNorm();
    out.candidates.push_back(g);
    out.validation_error.push_back(err);
    best = std::min(best, err);
  }
  const double tol = kCvTieTolerance * val_energy;
  out.degree = out.candidates.front();
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    if (out.validation_error[i] <= best + tol) {
      out.degree = out.candidates[i];
      break;
    }
  }
  return out;
}

PpaModel fit(const DataMatrix& x, const FitConfig& config) {
  config.validate();
  const Eigen::Index d = x.dims();
  if (d < 2) throw Error(ErrorKind::DimensionMismatch, "fitting needs dimension >= 2");
  Centered c = center(x);
  const double base_energy = c.values.squaredNorm();
  if (!(base_energy > 0.0)) throw Error(ErrorKind::RankDeficient, "all samples are identical");

  std::vector<PpaStep> steps;
  std::vector<std::string> notes;
  Matrix cur = std::move(c.values);
  std::optional<Rng> rotation_rng;
  if (config.complement_rotation_seed) rotation_rng.emplace(*config.complement_rotation_seed);

  for (Eigen::Index p = 0; p < d - 1; ++p) {
    const Eigen::Index m = cur.rows();
    const std::string tag = "step " + std::to_string(p + 1) + ": ";
    bool degenerate = !(cur.squaredNorm() > kDegenerateEnergy * base_energy);
    StepFit sf;
    if (!degenerate) {
      try {
        LeadingSplit split = pca_split(cur);
        int degree = config.degree.min_degree;
        if (config.degree.cross_validate) {
          DegreeSelection sel =
              select_degree(cur, split.leading, split.complement, config.degree.min_degree,
                            config.degree.max_degree, config.cv_fraction, derive_seed(config.seed, usize(p)));
          degree = sel.degree;
          for (auto& w : sel.warnings) notes.push_back(tag + w);
        }
        Vector leading = std::move(split.leading);
        RowMatrix complement = std::move(split.complement);
        if (config.strategy == Strategy::GradientDescent) {
          DescentOptions opts = config.descent;
          opts.seed = derive_seed(config.seed ^ config.descent.seed, 1000 + usize(p));
          DescentResult best = optimize_leading(cur, degree, leading, opts);
          if (!best.converged) notes.push_back(tag + "descent stopped at the iteration limit");
          leading = std::move(best.leading);
          complement = complement_basis(leading);
        }
        if (rotation_rng) complement = random_orthogonal(m - 1, *rotation_rng) * complement;
        sf = fit_step_with_basis(cur, std::move(leading), std::move(complement), degree);
        if (sf.condition > kConditionWarning) {
          std::ostringstream os;
          os << tag << "Vandermonde condition number " << sf.condition << " exceeds " << kConditionWarning;
          notes.push_back(os.str());
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::RankDeficient) throw;
        degenerate = true;
      }
    }
    if (degenerate) {
      notes.push_back(tag + "residual is numerically zero; identity basis with zero polynomial");
      sf.step = degenerate_step(m);
      step_forward_batch(sf.step, cur, sf.alphas, sf.residual);
    }
    steps.push_back(std::move(sf.step));
    cur = std::move(sf.residual);
  }

  PpaModel model(std::move(c.mean), std::move(steps), config.strategy);
  for (auto& n : notes) model.add_warning(std::move(n));
  return model;
}

Vector forward(const PpaModel& model, const Eigen::Ref<const Vector>& x) {
  const Eigen::Index d = model.dims();
  if (x.size() != d) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from model");
  Vector out(d);
  Vector cur = x - model.mean();
  Vector next;
  for (std::size_t p = 0; p < model.steps().size(); ++p) {
    const PpaStep& step = model.steps()[p];
    next.resize(step.output_dim());
    out(static_cast<Eigen::Index>(p)) = step_forward(step, cur.data(), next.data());
    std::swap(cur, next);
  }
  out(d - 1) = cur(0);
  return out;
}

Matrix forward(const PpaModel& model, const DataMatrix& x) {
  if (x.dims() != model.dims()) throw Error(ErrorKind::DimensionMismatch, "data dimension differs from model");
  Matrix out(model.dims(), x.samples());
  parallel_for(usize(x.samples()), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const auto j = static_cast<Eigen::Index>(k);
      out.col(j) = forward(model, x.col(j));
    }
  });
  return out;
}

namespace {

Vector undo_steps(const PpaModel& model, const Eigen::Ref<const Vector>& r, Vector residual, Eigen::Index from) {
  Vector prev;
  for (Eigen::Index p = from - 1; p >= 0; --p) {
    const PpaStep& step = model.steps()[usize(p)];
    prev.resize(step.input_dim());
    step_inverse(step, r(p), residual.data(), prev.data());
    std::swap(residual, prev);
  }
  return residual + model.mean();
}

}  // namespace

Vector inverse(const PpaModel& model, const Eigen::Ref<const Vector>& r) {
  const Eigen::Index d = model.dims();
  if (r.size() != d) throw Error(ErrorKind::DimensionMismatch, "transformed point dimension differs from model");
  return undo_steps(model, r, r.tail(1), d - 1);
}

Matrix inverse_batch(const PpaModel& model, const Eigen::Ref<const Matrix>& r) {
  if (r.rows() != model.dims()) throw Error(ErrorKind::DimensionMismatch, "transformed data dimension differs");
  Matrix out(model.dims(), r.cols());
  parallel_for(usize(r.cols()), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const auto j = static_cast<Eigen::Index>(k);
      out.col(j) = inverse(model, r.col(j));
    }
  });
  return out;
}

Vector reconstruct_truncated(const PpaModel& model, const Eigen::Ref<const Vector>& r, Eigen::Index keep) {
  const Eigen::Index d = model.dims();
  if (r.size() != d) throw Error(ErrorKind::DimensionMismatch, "transformed point dimension differs from model");
  if (keep < 1 || keep > d) throw Error(ErrorKind::OutOfRange, "kept dimensions must be in [1, d]");
  if (keep == d) return inverse(model, r);
  return undo_steps(model, r, Vector::Zero(d - keep), keep);
}

double truncation_mse(const PpaModel& model, const DataMatrix& x, Eigen::Index keep) {
  if (x.dims() != model.dims()) throw Error(ErrorKind::DimensionMismatch, "data dimension differs from model");
  if (keep < 1 || keep > model.dims()) throw Error(ErrorKind::OutOfRange, "kept dimensions must be in [1, d]");
  std::vector<double> err(usize(x.samples()));
  parallel_for(err.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const auto j = static_cast<Eigen::Index>(k);
      const Vector r = forward(model, x.col(j));
      err[k] = (x.col(j) - reconstruct_truncated(model, r, keep)).squaredNorm();
    }
  });
  double total = 0.0;
  for (double v : err) total += v;
  return total / static_cast<double>(err.size());
}

}  // namespace ppa
