#pragma once

#include <variant>
#include <vector>

#include "dwell/diagonalize.hpp"

namespace dwell {

/// Tolerance deciding psi_i + sigma0 phi_i == 0 for indices with
/// alpha_i + sigma0 == 0: 1e-8 * max(1, |psi|_inf + |sigma0| |phi|_inf).
double hard_case_tolerance(const CanonicalInstance& can);

/// Indices grouped into the critical set I: alpha_i + sigma0 <= 1e-9 max(1, |alpha|_inf).
double tie_tolerance(const CanonicalInstance& can);
std::vector<Index> critical_indices(const CanonicalInstance& can);

/// True when every critical index has a vanishing numerator, so the dual
/// function stays finite as sigma -> sigma0+.
bool finite_at_sigma0(const CanonicalInstance& can);

/// Canonical dual
///   Pi^d(sigma) = -1/2 sigma^2 - 1/2 sum_i (psi_i + sigma phi_i)^2 / (alpha_i + sigma)
///                 - nu sigma + offset
/// on sigma > sigma0; at sigma == sigma0 the limit is returned when it is
/// finite. Throws DomainError elsewhere.
double dual_value(const CanonicalInstance& can, double sigma);

/// d Pi^d / d sigma = Lambda(w(sigma)) - sigma.
double dual_derivative(const CanonicalInstance& can, double sigma);

/// w(sigma)_i = (psi_i + sigma phi_i) / (alpha_i + sigma); phi_i on the
/// critical set when sigma == sigma0.
Vector w_of_sigma(const CanonicalInstance& can, double sigma);

/// Sum_i 1/2 (alpha_i + sigma) w_i^2.
double gap_function(const CanonicalInstance& can, const Vector& w, double sigma);

/// Xi(w, sigma) = -1/2 sigma^2 + sum_i [1/2 (alpha_i + sigma) w_i^2
///                - (psi_i + sigma phi_i) w_i] - sigma nu + offset.
double total_complementary(const CanonicalInstance& can, const Vector& w, double sigma);

struct InteriorDual {
  double sigma_star = 0.0;
  int iterations = 0;
};

struct BoundaryDual {
  double sigma0 = 0.0;
  double g_limit = 0.0;  // lim_{sigma -> sigma0+} dPi^d/dsigma, <= 0
  std::vector<Index> I;
  std::vector<Index> J;
};

using DualResult = std::variant<InteriorDual, BoundaryDual>;

/// Maximizes Pi^d over (sigma0, inf). The derivative is strictly decreasing
/// there, so the maximizer is either its unique root or the left endpoint.
/// Roots are found by safeguarded Newton inside a bracket and accepted when
/// |g| <= tol * max(1, |nu|).
DualResult solve_dual(const CanonicalInstance& can, double tol = 1e-10);

struct UniquePoint {
  Vector w;
};

/// {w : w_J = fixed, |w_I - center| = radius}
struct SolutionSphere {
  std::vector<Index> I;
  std::vector<Index> J;
  Vector center;  // phi_i for i in I
  Vector fixed;   // w_j* for j in J
  double radius = 0.0;

  /// Member of the sphere in the direction of `direction` (length |I|,
  /// normalized internally).
  Vector point(const Vector& direction) const;
};

struct GlobalSolutionSet {
  std::variant<UniquePoint, SolutionSphere> shape;
  double value = 0.0;
  double xi_star = 0.0;
  Vector representative_w;
  Vector representative_x;

  bool is_sphere() const { return std::holds_alternative<SolutionSphere>(shape); }
};

/// Global minimizers of the canonical primal from a dual solution.
/// Boundary results are lifted onto the sphere by moving w(sigma0) along
/// the first critical coordinate.
GlobalSolutionSet primal_from_dual(const CanonicalInstance& can, const DualResult& result);

}  // namespace dwell
