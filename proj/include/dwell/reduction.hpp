#pragma once

#include <string_view>
#include <variant>

#include "dwell/instance.hpp"

namespace dwell {

/// Orthonormal split of R^n into null(B) (columns of U) and its orthogonal
/// complement (columns of V), so that every x = U y + V z.
struct NullSpaceSplit {
  Matrix U;  // n x r
  Matrix V;  // n x (n - r)
  Index r = 0;
};

/// Rank is decided by singular values above 1e-10 * sigma_max.
NullSpaceSplit null_space_basis(const Matrix& B);

/// Recovers x from the coordinates z of a reduced instance. The inner
/// minimizer over the null-space coordinates is y*(z) = y_gain z + y_offset,
/// i.e. y* = -A_uu^+ U^T (A V z - f); W spans null(A_uu) and every
/// x + U W beta attains the same objective value.
struct LiftMap {
  Matrix U;
  Matrix V;
  Matrix pinv;      // A_uu^+            (r x r)
  Matrix y_gain;    // -A_uu^+ A_uv      (r x (n - r))
  Vector y_offset;  // A_uu^+ U^T f      (r)
  Matrix W;         // null(A_uu) basis  (r x k)

  Index full_dimension() const { return U.rows(); }
  Index reduced_dimension() const { return V.cols(); }
};

Vector lift_solution(const LiftMap& lift, const Vector& z);

/// Which case of the null-space elimination applied.
enum class ReductionBranch {
  FullRank,           // r = 0, instance passes through
  IndefiniteNullSpace,  // A_uu has a negative eigenvalue
  LinearDescent,      // A_uu = 0 with a nonzero coupling or linear term
  Decoupled,          // A_uu = 0, A_uv = 0, U^T f = 0
  PseudoInverse,      // A_uu >= 0 nonzero, stationarity system consistent
  InconsistentNullSpace,  // A_uu >= 0 nonzero, null(A_uu) sees a linear term
};

std::string_view to_string(ReductionBranch branch);

/// A ray x(t) = base + t * direction along which the objective decreases
/// without bound. Directions are scaled so that the decrease is at least
/// 10 t^2 (negative curvature) or 1e4 t (linear descent).
struct DescentCertificate {
  Vector base;
  Vector direction;

  Vector at(double t) const { return base + t * direction; }
};

struct Unbounded {
  DescentCertificate certificate;
};

struct Reduced {
  DwpInstance sub;  // over z, with B^T B positive definite
  LiftMap lift;
};

struct ReductionOutcome {
  ReductionBranch branch;
  std::variant<Unbounded, Reduced> result;

  bool unbounded() const { return std::holds_alternative<Unbounded>(result); }
  const Reduced& reduced() const { return std::get<Reduced>(result); }
  const Unbounded& certificate() const { return std::get<Unbounded>(result); }
};

/// Eliminates null(B) from the problem. Reduced outcomes preserve the
/// infimum: objective(inst, lift(z)) == objective(sub, z) for every z, and
/// lift(z) minimizes the original objective over x in lift(z) + null(B).
ReductionOutcome reduce(const DwpInstance& inst);

}  // namespace dwell
