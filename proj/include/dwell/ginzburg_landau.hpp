#pragma once

#include "dwell/instance.hpp"

namespace dwell {

/// Uniform grid on the unit square with s x-subintervals and t
/// y-subintervals, plus the material constants of the double-well term.
struct GridSpec {
  int s = 1;
  int t = 1;
  double gl_alpha = 1.0;
  double gl_beta = 1.0;

  /// Throws InputError unless s, t >= 1 and both constants are positive.
  void validate() const;
  Index nodes() const { return static_cast<Index>(s + 1) * (t + 1); }
};

/// Zero-based position of node (i, j), 1 <= i <= s+1, 1 <= j <= t+1.
/// Nodes are ordered with i running fastest.
Index node_index(const GridSpec& spec, int i, int j);

/// Finite-difference / Riemann-sum energy of the field e:
///   sum_{i<=s, j<=t} (s/2t)(e_{i+1,j} - e_{i,j})^2 + (t/2s)(e_{i,j+1} - e_{i,j})^2
///                    + (alpha/2st)(e_{i,j}^2 / 2 - beta)^2
double discrete_energy(const GridSpec& spec, const Vector& e);

/// Double-well instance with x = e whose objective majorizes the quartic
/// and quadratic parts of the energy:
///   B = (alpha/(ts))^{1/4} I, c = 0, d = 0, f = 0,
///   A = (s/t) sum B_i + (t/s) sum C_i - (alpha beta/(ts)) I,
///   constant_offset = alpha beta^2 / 2.
/// A is assembled from the difference stencils directly.
DwpInstance build_dwp_instance(const GridSpec& spec);

struct UpperBoundCheck {
  double bound = 0.0;   // objective of build_dwp_instance(spec) at e
  double energy = 0.0;  // discrete_energy(spec, e)

  bool dominates(double tol = 1e-9) const { return bound >= energy - tol; }
};

/// Evaluates both sides. The instance replaces sum_{interior} e^4 by
/// |e|^4 and sum_{interior} e^2 by |e|^2; the second substitution enters
/// with a negative sign, so the bound can fall below the energy when the
/// field is small and concentrated on the last row/column of nodes.
UpperBoundCheck upper_bound_check(const GridSpec& spec, const Vector& e);

}  // namespace dwell
