#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppa/optim.hpp"
#include "ppa/pca.hpp"
#include "ppa/polyfit.hpp"
#include "ppa/types.hpp"

namespace ppa {

enum class Strategy { PcaBased, GradientDescent };

const char* to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

struct DegreePolicy {
  int min_degree = 1;
  int max_degree = 5;
  bool cross_validate = true;

  static DegreePolicy fixed(int degree) { return {degree, degree, false}; }
  static DegreePolicy cross_validated(int lo, int hi) { return {lo, hi, true}; }
};

struct FitConfig {
  DegreePolicy degree = DegreePolicy::cross_validated(1, 5);
  double cv_fraction = 0.5;  // share of each step's samples held out for degree selection
  Strategy strategy = Strategy::PcaBased;
  std::uint64_t seed = 0;
  DescentOptions descent;
  // When set, every complement basis is replaced by a seeded random rotation
  // of itself. The truncation error must not change.
  std::optional<std::uint64_t> complement_rotation_seed;

  void validate() const;
};

// One deflation stage acting on an m-dimensional residual.
struct PpaStep {
  Vector leading;        // m, unit norm
  RowMatrix complement;  // (m-1) x m, orthonormal rows, orthogonal to leading
  RowMatrix coeffs;      // (m-1) x (degree+1), constant term first
  int degree = 1;

  Eigen::Index input_dim() const { return leading.size(); }
  Eigen::Index output_dim() const { return complement.rows(); }

  // Checks the orthonormality relations; throws InvalidData on violation.
  void check(double tol = 1e-10) const;
};

// Forward map of a single step on one point: alpha and the (m-1) residual.
// Batch fitting goes through the same arithmetic, so residuals stored during
// fitting and residuals recomputed from the step agree bit for bit.
double step_forward(const PpaStep& step, const double* x, double* residual);

// x_prev = leading * alpha + complement^T (residual + W v(alpha)).
void step_inverse(const PpaStep& step, double alpha, const double* residual, double* xprev);

// Batch forward of one step: alphas (n) and residuals ((m-1) x n).
void step_forward_batch(const PpaStep& step, const Eigen::Ref<const Matrix>& x, Vector& alphas, Matrix& residual);

class PpaModel {
 public:
  PpaModel() = default;
  PpaModel(Vector mean, std::vector<PpaStep> steps, Strategy strategy);

  Eigen::Index dims() const { return mean_.size(); }
  const Vector& mean() const { return mean_; }
  const std::vector<PpaStep>& steps() const { return steps_; }
  Strategy strategy() const { return strategy_; }

  std::vector<int> degrees() const;

  // Fitting notes (conditioning, capped degree ranges, degenerate residuals).
  // Not serialized.
  const std::vector<std::string>& warnings() const { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  Vector mean_;
  std::vector<PpaStep> steps_;
  Strategy strategy_ = Strategy::PcaBased;
  std::vector<std::string> warnings_;
};

struct StepFit {
  PpaStep step;
  Vector alphas;
  Matrix residual;
  double condition = 0.0;
};

// Fits W for a given leading/complement pair.
StepFit fit_step_with_basis(const Eigen::Ref<const Matrix>& xprev, Vector leading, RowMatrix complement, int degree);

// One deflation step: leading vector from the covariance (pca-based) or from
// descent on the cost (gradient-descent), then the polynomial fit.
StepFit fit_step(const Eigen::Ref<const Matrix>& xprev, int degree, Strategy strategy, const DescentOptions& opts);

struct DegreeSelection {
  int degree = 1;
  std::vector<int> candidates;
  std::vector<double> validation_error;  // per candidate, sum of squared residuals
  std::vector<std::string> warnings;
};

// Holds out floor(cv_fraction * n) seeded-random columns, fits each candidate
// degree on the rest and keeps the one with the smallest validation residual
// energy. Errors within 1e-10 of the validation energy count as ties and go
// to the smaller degree.
DegreeSelection select_degree(const Eigen::Ref<const Matrix>& xprev, int min_degree, int max_degree,
                              double cv_fraction, std::uint64_t seed);

// Same, with the leading/complement pair supplied.
DegreeSelection select_degree(const Eigen::Ref<const Matrix>& xprev, const Vector& leading,
                              const RowMatrix& complement, int min_degree, int max_degree, double cv_fraction,
                              std::uint64_t seed);

PpaModel fit(const DataMatrix& x, const FitConfig& config);

Vector forward(const PpaModel& model, const Eigen::Ref<const Vector>& x);
Matrix forward(const PpaModel& model, const DataMatrix& x);

Vector inverse(const PpaModel& model, const Eigen::Ref<const Vector>& r);
// Column-wise inverse of a d x n block of transformed points.
Matrix inverse_batch(const PpaModel& model, const Eigen::Ref<const Matrix>& r);

// Reconstruction from the first `keep` transformed coordinates
// [alpha_1 .. alpha_keep]: the residual left after step `keep` is taken as
// zero and steps keep..1 are undone. keep == dims is the plain inverse.
Vector reconstruct_truncated(const PpaModel& model, const Eigen::Ref<const Vector>& r, Eigen::Index keep);

// Mean over samples of ||x - reconstruct_truncated(forward(x), keep)||^2.
double truncation_mse(const PpaModel& model, const DataMatrix& x, Eigen::Index keep);

}  // namespace ppa
