#pragma once

#include <vector>

#include "dwell/diagonalize.hpp"

namespace dwell {

// The dual of the canonical dual is the convex program
//
//   min_lambda  sum_i alpha_i lambda_i - sum_i |tau_i| sqrt(2 lambda_i + phi_i^2)
//               + 1/2 (sum_i lambda_i - nu)^2 - sum_i tau_i phi_i + offset
//   s.t.        lambda_i + phi_i^2 / 2 >= 0
//
// with tau = psi - alpha * phi. It has the same value as the primal
// restricted to tau_i (w_i - phi_i) >= 0, through the change of variables
// lambda_i = 1/2 (w_i - phi_i)^2 - phi_i^2 / 2.

/// lambda_i + phi_i^2 / 2 >= -1e-12 for all i.
bool lambda_feasible(const CanonicalInstance& can, const Vector& lambda);

/// Throws DomainError for infeasible lambda.
double pdd_value(const CanonicalInstance& can, const Vector& lambda);

/// Gradient in lambda; -inf components where the square root vanishes
/// with tau_i != 0.
Vector pdd_gradient(const CanonicalInstance& can, const Vector& lambda);

struct WFromLambda {
  Vector w;
  /// tau_i == 0: both signs of the square root give the same value; the
  /// plus branch is returned.
  std::vector<bool> multivalued;
};

WFromLambda w_from_lambda(const CanonicalInstance& can, const Vector& lambda);

struct LambdaFromW {
  Vector lambda;
  /// tau_i (w_i - phi_i) >= 0 for all i.
  bool sign_constraints_hold = false;
};

LambdaFromW lambda_from_w(const CanonicalInstance& can, const Vector& w);

/// Completed-squares primal
///   F(w) = 1/2 {sum_i [1/2 (w_i - phi_i)^2 - phi_i^2/2] - nu}^2
///          + sum_i {alpha_i [1/2 (w_i - phi_i)^2 - phi_i^2/2] - tau_i w_i} + offset
double f_value(const CanonicalInstance& can, const Vector& w);

struct PddSolution {
  Vector lambda;
  double value = 0.0;
  double projected_gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Two-metric projected method with Armijo backtracking along the projection
/// arc, started at lambda_from_w(w(sigma0 + 1)). Free coordinates take a
/// Newton step with the diagonal-plus-rank-one Hessian; when that fails the
/// iteration falls back to a Barzilai-Borwein projected gradient step.
/// Stops when the projected-gradient norm is <= tol * max(1, |value|).
PddSolution solve_pdd(const CanonicalInstance& can, double tol = 1e-10);

}  // namespace dwell
