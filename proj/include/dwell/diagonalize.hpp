#pragma once

#include "dwell/instance.hpp"

namespace dwell {

/// P with P^T G P = I and P^T A P = Diag(alpha), alpha ascending.
struct Congruence {
  Matrix P;
  Vector alpha;
};

/// Simultaneous diagonalization of a symmetric A and a positive definite G.
/// P = P1 P2 where P1 = L^{-T} from G = L L^T and P2 is the orthonormal
/// eigenbasis of P1^T A P1. Each column of P2 has its largest-magnitude
/// entry positive. Throws PreconditionError unless
/// lambda_min(G) > 1e-10 lambda_max(G).
Congruence congruence_transform(const Matrix& A, const Matrix& G);

/// Separated-squares form of an instance with B^T B positive definite:
///
///   Pi(w) = 1/2 Lambda(w)^2 + sum_i (1/2 alpha_i w_i^2 - psi_i w_i) + constant_offset
///   Lambda(w) = sum_i (1/2 w_i^2 - phi_i w_i) - nu
///
/// with x = P w, psi = P^T f, phi = P^T B^T c, nu = d - 1/2 c^T c.
struct CanonicalInstance {
  Vector alpha;
  Vector psi;
  Vector phi;
  double nu = 0.0;
  Matrix P;
  double sigma0 = 0.0;  // max_i(-alpha_i)
  double constant_offset = 0.0;

  Index n() const { return alpha.size(); }
  /// tau_i = psi_i - alpha_i phi_i
  Vector tau() const { return psi - alpha.cwiseProduct(phi); }

  /// Builds directly from canonical data with P = I.
  static CanonicalInstance from_parameters(Vector alpha, Vector psi, Vector phi,
                                           double nu, double constant_offset = 0.0);
};

/// A point of the canonical primal together with its strain value xi.
struct CanonicalPoint {
  Vector w;
  double xi = 0.0;
};

/// Requires B^T B positive definite; call reduce() first otherwise.
CanonicalInstance to_canonical(const DwpInstance& inst);

double lambda_operator(const CanonicalInstance& can, const Vector& w);

/// Constrained point (xi = Lambda(w)).
CanonicalPoint canonical_point(const CanonicalInstance& can, const Vector& w);

double canonical_objective(const CanonicalInstance& can, const Vector& w);

/// 1/2 xi^2 + sum_i (1/2 alpha_i w_i^2 - psi_i w_i) + offset, with xi taken
/// from the point rather than recomputed.
double canonical_objective(const CanonicalInstance& can, const CanonicalPoint& point);

Vector recover_x(const CanonicalInstance& can, const Vector& w);

/// w = P^{-1} x
Vector to_w(const CanonicalInstance& can, const Vector& x);

}  // namespace dwell
