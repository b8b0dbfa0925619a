#include "dwell/solve.hpp"

#include <cmath>

#include "dwell/diagonalize.hpp"

namespace dwell {

namespace {

using nlohmann::json;

json to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const std::vector<Index>& idx) {
  json out = json::array();
  for (Index i : idx) out.push_back(i);
  return out;
}

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::GlobalMinimum: return "GlobalMinimum";
    case SolveStatus::GlobalSphere: return "GlobalSphere";
    case SolveStatus::Unbounded: return "Unbounded";
  }
  return "unknown";
}

SolveReport solve(const DwpInstance& inst, double tol) {
  SolveReport report;
  const ReductionOutcome outcome = reduce(inst);
  report.diagnostics.reduction_branch = outcome.branch;

  if (outcome.unbounded()) {
    report.status = SolveStatus::Unbounded;
    report.certificate = outcome.certificate().certificate;
    return report;
  }

  const Reduced& red = outcome.reduced();
  report.diagnostics.reduced_dimension = red.sub.n();
  report.diagnostics.null_directions = red.lift.W.cols();

  const CanonicalInstance can = to_canonical(red.sub);
  const DualResult dual = solve_dual(can, tol);
  const GlobalSolutionSet sol = primal_from_dual(can, dual);

  if (const auto* interior = std::get_if<InteriorDual>(&dual)) {
    report.diagnostics.dual_iterations = interior->iterations;
    report.diagnostics.I = critical_indices(can);
  } else {
    const auto& boundary = std::get<BoundaryDual>(dual);
    report.diagnostics.I = boundary.I;
    report.diagnostics.J = boundary.J;
  }
  if (report.diagnostics.J.empty()) {
    for (Index i = 0; i < can.n(); ++i) {
      bool in_i = false;
      for (Index k : report.diagnostics.I) in_i = in_i || k == i;
      if (!in_i) report.diagnostics.J.push_back(i);
    }
  }

  const Vector x = lift_solution(red.lift, sol.representative_x);
  report.sigma = sol.xi_star;
  report.value = sol.value;
  report.x = x;

  if (const auto* sphere = std::get_if<SolutionSphere>(&sol.shape)) {
    report.status = SolveStatus::GlobalSphere;
    SphereReport sr;
    sr.I = sphere->I;
    sr.J = sphere->J;
    sr.center = sphere->center;
    sr.radius = sphere->radius;
    sr.fixed = sphere->fixed;
    Vector dir = Vector::Zero(static_cast<Index>(sphere->I.size()));
    dir(0) = 1.0;
    sr.samples[0] = lift_solution(red.lift, recover_x(can, sphere->point(dir)));
    sr.samples[1] = lift_solution(red.lift, recover_x(can, sphere->point(-dir)));
    report.sphere = std::move(sr);
  } else {
    report.status = SolveStatus::GlobalMinimum;
  }

  report.diagnostics.gradient_norm = evaluate_gradient(inst, x).norm();
  report.diagnostics.duality_gap = std::abs(evaluate_objective(inst, x) - sol.value);
  return report;
}

json report_to_json(const SolveReport& report) {
  json out;
  out["status"] = std::string(to_string(report.status));
  if (report.sigma) out["sigma"] = *report.sigma;
  if (report.value) out["value"] = *report.value;
  if (report.x) out["x"] = to_json(*report.x);
  if (report.sphere) {
    const SphereReport& s = *report.sphere;
    out["sphere"] = {
        {"I", to_json(s.I)},
        {"J", to_json(s.J)},
        {"center", to_json(s.center)},
        {"radius", s.radius},
        {"fixed", to_json(s.fixed)},
        {"samples", json::array({to_json(s.samples[0]), to_json(s.samples[1])})},
    };
  }
  if (report.certificate) {
    out["certificate"] = {
        {"base", to_json(report.certificate->base)},
        {"direction", to_json(report.certificate->direction)},
    };
  }
  const SolveDiagnostics& d = report.diagnostics;
  out["diagnostics"] = {
      {"reduction_branch", std::string(to_string(d.reduction_branch))},
      {"reduced_dimension", d.reduced_dimension},
      {"null_directions", d.null_directions},
      {"I", to_json(d.I)},
      {"J", to_json(d.J)},
      {"dual_iterations", d.dual_iterations},
      {"residuals", {{"gradient_norm", d.gradient_norm}, {"duality_gap", d.duality_gap}}},
  };
  return out;
}

}  // namespace dwell
