#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dwell/dual_solver.hpp"
#include "dwell/instance.hpp"
#include "dwell/reduction.hpp"

namespace dwell {

enum class SolveStatus { GlobalMinimum, GlobalSphere, Unbounded };

std::string_view to_string(SolveStatus status);

/// Global solution sphere. center/radius/fixed live in the canonical w
/// coordinates of the reduced instance; samples are x-space points.
struct SphereReport {
  std::vector<Index> I;
  std::vector<Index> J;
  Vector center;
  double radius = 0.0;
  Vector fixed;
  std::array<Vector, 2> samples;
};

struct SolveDiagnostics {
  ReductionBranch reduction_branch = ReductionBranch::FullRank;
  Index reduced_dimension = 0;
  Index null_directions = 0;  // dim null(A_uu); the minimizer is unique up to these
  std::vector<Index> I;
  std::vector<Index> J;
  int dual_iterations = 0;
  double gradient_norm = 0.0;  // |grad objective(x)| at the reported x
  double duality_gap = 0.0;    // |objective(x) - value|
};

struct SolveReport {
  SolveStatus status = SolveStatus::GlobalMinimum;
  std::optional<double> sigma;
  std::optional<double> value;
  std::optional<Vector> x;
  std::optional<SphereReport> sphere;
  std::optional<DescentCertificate> certificate;
  SolveDiagnostics diagnostics;
};

/// reduce -> to_canonical -> solve_dual -> primal_from_dual -> lift.
/// Reported values include the instance's constant_offset.
SolveReport solve(const DwpInstance& inst, double tol = 1e-10);

/// Fixed-schema JSON; only the fields implied by the status are present.
nlohmann::json report_to_json(const SolveReport& report);

}  // namespace dwell
