#pragma once

#include <cstdint>
#include <vector>

#include "ppa/polyfit.hpp"
#include "ppa/types.hpp"

namespace ppa {

struct DescentOptions {
  int max_iters = 200;
  double initial_step = 0.1;
  double backtracking = 0.5;
  double gradient_tolerance = 1e-7;
  int restarts = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Rows of the Householder reflection that sends e to -sign(e_0) times the
// first axis, minus the row for e itself. Deterministic; E e = 0, E E^T = I.
RowMatrix complement_basis(const Eigen::Ref<const Vector>& e);

// Mean squared residual left by the best degree-`degree` polynomial in
// alpha = e^T x:
//   f(e) = (1/n) || E X - W V(alpha) ||_F^2,  W = (E X) pinv(V).
// The value does not depend on the complement E. A non-unit e is
// normalized first, so f is scale invariant.
double cost(const Eigen::Ref<const Vector>& e, const Eigen::Ref<const Matrix>& x, int degree);

// Gradient of cost(). Per sample the residual r_k = E x_k - W v_k is paired
// with the slope of the fitted polynomial, W D v_k:
//   g = -(2/n) sum_k (r_k . W D v_k) x_k,
// then projected onto the tangent space of the unit sphere at e (the cost
// is scale invariant, so the radial part is zero).
Vector cost_gradient(const Eigen::Ref<const Vector>& e, const Eigen::Ref<const Matrix>& x, int degree);

struct DescentResult {
  Vector leading;
  double cost = 0.0;
  double initial_cost = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // cost of every accepted iterate, starting at init
};

// Projected gradient descent on the unit sphere with backtracking
// (Armijo sufficient decrease). Returns the best iterate seen; its cost never
// exceeds the cost at `init`. Extra random restarts, when requested, only
// replace the result if they do strictly better.
DescentResult optimize_leading(const Eigen::Ref<const Matrix>& x, int degree, const Eigen::Ref<const Vector>& init,
                               const DescentOptions& opts);

}  // namespace ppa
