#pragma once

#include <utility>
#include <vector>

#include "ppa/model.hpp"
#include "ppa/types.hpp"

namespace ppa {

// m x m Jacobian of one step at its input xprev:
//   [ e^T ; E^T - u e^T ],   u = W v'(alpha),  alpha = e^T xprev.
// A shear of an orthonormal matrix, so |det| = 1.
Matrix step_jacobian(const PpaStep& step, const Eigen::Ref<const Vector>& xprev);

struct JacobianMatrix {
  Matrix jacobian;  // d x d, d(transformed)/d(input)
  Vector point;
  double log_abs_det = 0.0;  // from the LU factorization
};

// Product of identity-padded step Jacobians along the forward pass of x.
JacobianMatrix full_jacobian(const PpaModel& model, const Eigen::Ref<const Vector>& x);

// Per-coordinate variances (1/(n-1)) of the transformed data, floored at 1e-12.
Vector whitened_variances(const PpaModel& model, const DataMatrix& x);

inline constexpr double kVarianceFloor = 1e-12;

struct MetricTensor {
  Matrix metric;      // J^T diag(1/variances) J
  Vector variances;
};

MetricTensor metric_tensor(const PpaModel& model, const Eigen::Ref<const Vector>& x,
                           const Eigen::Ref<const Vector>& variances);

// dx^T M(x) dx
double squared_distance(const PpaModel& model, const Eigen::Ref<const Vector>& x,
                        const Eigen::Ref<const Vector>& dx, const Eigen::Ref<const Vector>& variances);

// Points of the first curvilinear feature: for each alpha, the
// reconstruction of [alpha, 0, ..., 0] from one coordinate.
std::vector<Vector> principal_curve(const PpaModel& model, const std::vector<double>& alpha_grid);

// Generalization to principal surfaces/volumes: every node of the tensor grid
// over the first `dims` coordinates (same axis values for each), reconstructed
// from `dims` coordinates. Returns (node coordinates, points).
std::vector<std::pair<Vector, Vector>> principal_grid(const PpaModel& model, int dims,
                                                      const std::vector<double>& axis);

// k-th derivative (k >= 1) of the first principal curve with respect to alpha.
Vector curve_derivative(const PpaModel& model, double alpha, int order);

struct FrenetFrame {
  double alpha = 0.0;
  Vector point;
  Matrix frame;        // columns: tangent, normal, binormal, ...; det = +1
  Vector curvatures;   // chi_1 .. chi_{d-1}; only the last may be negative
  double speed = 0.0;  // ||dx/dalpha||
};

// Frenet-Serret frame and generalized curvatures of the first principal curve
// at alpha. Tangent is the first column of the inverse Jacobian at the curve
// point; higher derivatives are exact polynomial derivatives. Curvatures are
// per unit arc length.
FrenetFrame frenet_frame(const PpaModel& model, double alpha);

// Curvature and torsion of the helix (a cos t, a sin t, b t).
std::pair<double, double> helix_reference_curvatures(double a, double b);

}  // namespace ppa
