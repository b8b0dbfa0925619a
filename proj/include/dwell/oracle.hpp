#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "dwell/diagonalize.hpp"
#include "dwell/instance.hpp"

namespace dwell {

// Brute-force references used to check the duality pipeline. None of these
// call into the reduction or dual solvers.

enum class StationaryKind { Regular, SingularBranch };

struct StationaryPoint {
  double xi = 0.0;
  Vector w;
  double value = 0.0;
  StationaryKind kind = StationaryKind::Regular;
};

/// Roots of g(xi) = Lambda(w(xi)) - xi on every pole-free piece of
/// [lo, hi], found by sign changes on a uniform grid of `samples` cells and
/// bisection to 1e-10, plus candidates at the poles xi = -alpha_i whose
/// numerators psi_i + xi phi_i vanish. Roots closer than one grid cell can
/// be missed.
std::vector<StationaryPoint> stationary_scan(const CanonicalInstance& can, double lo, double hi,
                                             int samples);

struct OracleMinimum {
  Vector x;
  double value = 0.0;
};

using Box = std::vector<std::pair<double, double>>;

/// Exhaustive search over the (steps + 1)^n lattice of `box`; n <= 3.
OracleMinimum grid_min(const DwpInstance& inst, const Box& box, int steps);

/// Half-width of the cube multistart_min samples from:
/// 2 + |f| + |A|_2 + sqrt(2|d| + |c|^2) / (smallest nonzero singular value of B).
double multistart_box_radius(const DwpInstance& inst);

/// Local minimum reached by gradient descent with backtracking from x0.
OracleMinimum local_descent(const DwpInstance& inst, const Vector& x0, int max_iterations = 20000);

/// Best local_descent result from `starts` points drawn uniformly from the
/// cube of multistart_box_radius. Start k is seeded with (seed, k), so the
/// result depends only on (inst, starts, seed).
OracleMinimum multistart_min(const DwpInstance& inst, int starts, std::uint64_t seed);

// Random instance generators. Entries of A, B, c, f are uniform on [-3, 3]
// and d is uniform on [-5, 40].

DwpInstance random_instance(std::mt19937_64& rng, Index n, Index m);

/// Built from canonical data: P = Q Diag(scale) with Q orthogonal and scale
/// in [0.5, 2], B = P^{-1}, `critical` coordinates sharing an alpha 0.2 to 2
/// below all the others, and psi_i = -sigma0 phi_i on those coordinates so
/// the dual stays finite at sigma0.
DwpInstance rigged_hard_case_instance(std::mt19937_64& rng, Index n, Index critical);

enum class NullSpaceCoupling {
  PositiveDefinite,  // U^T A U > 0
  Decoupled,         // U^T A U = 0, U^T A V = 0, U^T f = 0
  SingularConsistent,  // U^T A U >= 0 singular, consistent stationarity (rank gap >= 2)
};

/// B = L R with inner dimension `rank` < n; A and f arranged so that the
/// problem is bounded below through the requested null-space structure.
DwpInstance random_rank_deficient_instance(std::mt19937_64& rng, Index n, Index rank,
                                           NullSpaceCoupling coupling);

}  // namespace dwell
