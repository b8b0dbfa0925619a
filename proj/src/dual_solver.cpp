#include "dwell/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

constexpr int kMaxBracketDoublings = 2000;
constexpr int kMaxRootIterations = 500;
constexpr double kNegativeRadiusTolerance = 1e-8;

bool is_critical(const CanonicalInstance& can, Index i, double tie_tol) {
  return can.alpha(i) + can.sigma0 <= tie_tol;
}

// Shared domain check; returns true when sigma sits at the left endpoint.
bool check_domain(const CanonicalInstance& can, double sigma, const char* what) {
  if (std::isnan(sigma) || sigma < can.sigma0) {
    throw DomainError(std::string(what) + ": sigma below sigma0");
  }
  if (sigma > can.sigma0) return false;
  if (!finite_at_sigma0(can)) {
    throw DomainError(std::string(what) + ": dual function has a pole at sigma0");
  }
  return true;
}

double derivative_of_g(const CanonicalInstance& can, double sigma) {
  const Vector w = w_of_sigma(can, sigma);
  const Vector shift = w - can.phi;
  const Vector denom = can.alpha.array() + sigma;
  return -1.0 - (shift.array().square() / denom.array()).sum();
}

}  // namespace

double hard_case_tolerance(const CanonicalInstance& can) {
  const double scale = can.psi.cwiseAbs().maxCoeff() +
                       std::abs(can.sigma0) * can.phi.cwiseAbs().maxCoeff();
  return 1e-8 * std::max(1.0, scale);
}

double tie_tolerance(const CanonicalInstance& can) {
  return 1e-9 * std::max(1.0, can.alpha.cwiseAbs().maxCoeff());
}

std::vector<Index> critical_indices(const CanonicalInstance& can) {
  const double tie_tol = tie_tolerance(can);
  std::vector<Index> I;
  for (Index i = 0; i < can.n(); ++i) {
    if (is_critical(can, i, tie_tol)) I.push_back(i);
  }
  return I;
}

bool finite_at_sigma0(const CanonicalInstance& can) {
  const double htol = hard_case_tolerance(can);
  for (Index i : critical_indices(can)) {
    if (std::abs(can.psi(i) + can.sigma0 * can.phi(i)) > htol) return false;
  }
  return true;
}

Vector w_of_sigma(const CanonicalInstance& can, double sigma) {
  const bool at_boundary = check_domain(can, sigma, "w_of_sigma");
  const double tie_tol = tie_tolerance(can);
  Vector w(can.n());
  for (Index i = 0; i < can.n(); ++i) {
    if (at_boundary && is_critical(can, i, tie_tol)) {
      w(i) = can.phi(i);
    } else {
      w(i) = (can.psi(i) + sigma * can.phi(i)) / (can.alpha(i) + sigma);
    }
  }
  return w;
}

double dual_value(const CanonicalInstance& can, double sigma) {
  const bool at_boundary = check_domain(can, sigma, "dual_value");
  const double tie_tol = tie_tolerance(can);
  double sum = 0.0;
  for (Index i = 0; i < can.n(); ++i) {
    if (at_boundary && is_critical(can, i, tie_tol)) continue;
    const double num = can.psi(i) + sigma * can.phi(i);
    sum += num * num / (can.alpha(i) + sigma);
  }
  return -0.5 * sigma * sigma - 0.5 * sum - can.nu * sigma + can.constant_offset;
}

double dual_derivative(const CanonicalInstance& can, double sigma) {
  return lambda_operator(can, w_of_sigma(can, sigma)) - sigma;
}

double gap_function(const CanonicalInstance& can, const Vector& w, double sigma) {
  if (w.size() != can.n()) throw InputError("gap_function: dimension mismatch");
  return 0.5 * ((can.alpha.array() + sigma) * w.array().square()).sum();
}

double total_complementary(const CanonicalInstance& can, const Vector& w, double sigma) {
  if (w.size() != can.n()) throw InputError("total_complementary: dimension mismatch");
  const double linear = (can.psi + sigma * can.phi).dot(w);
  return -0.5 * sigma * sigma + gap_function(can, w, sigma) - linear - sigma * can.nu +
         can.constant_offset;
}

DualResult solve_dual(const CanonicalInstance& can, double tol) {
  const double s0 = can.sigma0;
  const std::vector<Index> I = critical_indices(can);

  if (finite_at_sigma0(can)) {
    const double g_limit = dual_derivative(can, s0);
    if (g_limit <= 0.0) {
      std::vector<Index> J;
      for (Index i = 0, k = 0; i < can.n(); ++i) {
        if (k < static_cast<Index>(I.size()) && I[static_cast<std::size_t>(k)] == i) {
          ++k;
        } else {
          J.push_back(i);
        }
      }
      return BoundaryDual{s0, g_limit, I, std::move(J)};
    }
  }

  auto g = [&](double sigma) { return dual_derivative(can, sigma); };
  const double g_tol = tol * std::max(1.0, std::abs(can.nu));

  // Left end of the bracket. g is +inf (pole) or positive (finite limit)
  // at sigma0, but roundoff can hide that very close to sigma0.
  double gap = std::max(1e-12, 1e-9 * (1.0 + std::abs(s0)));
  double lo = s0 + gap;
  double g_lo = g(lo);
  for (int k = 0; k < 60 && g_lo < 0.0; ++k) {
    gap *= 0.5;
    if (s0 + gap <= s0) break;
    lo = s0 + gap;
    g_lo = g(lo);
  }
  if (g_lo <= 0.0) return InteriorDual{lo, 0};

  double hi = s0 + 1.0;
  double g_hi = g(hi);
  for (int k = 0; k < kMaxBracketDoublings && g_hi > 0.0; ++k) {
    lo = hi;
    hi = s0 + 2.0 * (hi - s0);
    g_hi = g(hi);
  }
  if (g_hi > 0.0) throw InternalError("solve_dual: failed to bracket the dual root");
  if (g_hi == 0.0) return InteriorDual{hi, 0};

  double sigma = 0.5 * (lo + hi);
  int it = 0;
  for (; it < kMaxRootIterations; ++it) {
    const double gv = g(sigma);
    if (std::abs(gv) <= g_tol) break;
    if (gv > 0.0) {
      lo = sigma;
    } else {
      hi = sigma;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(sigma))) {
      break;
    }
    double next = sigma - gv / derivative_of_g(can, sigma);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    sigma = next;
  }
  return InteriorDual{sigma, it + 1};
}

Vector SolutionSphere::point(const Vector& direction) const {
  if (direction.size() != static_cast<Index>(I.size())) {
    throw InputError("SolutionSphere::point: direction must have |I| entries");
  }
  const double norm = direction.norm();
  if (norm == 0.0) throw InputError("SolutionSphere::point: zero direction");
  Vector w(static_cast<Index>(I.size() + J.size()));
  for (std::size_t k = 0; k < I.size(); ++k) {
    const auto kk = static_cast<Index>(k);
    w(I[k]) = center(kk) + radius * direction(kk) / norm;
  }
  for (std::size_t k = 0; k < J.size(); ++k) w(J[k]) = fixed(static_cast<Index>(k));
  return w;
}

GlobalSolutionSet primal_from_dual(const CanonicalInstance& can, const DualResult& result) {
  GlobalSolutionSet out;
  if (const auto* interior = std::get_if<InteriorDual>(&result)) {
    out.representative_w = w_of_sigma(can, interior->sigma_star);
    out.shape = UniquePoint{out.representative_w};
    out.xi_star = interior->sigma_star;
    out.value = dual_value(can, interior->sigma_star);
    out.representative_x = recover_x(can, out.representative_w);
    return out;
  }

  const auto& boundary = std::get<BoundaryDual>(result);
  const double s0 = boundary.sigma0;
  const Vector w0 = w_of_sigma(can, s0);

  double rho2 = 2.0 * s0 + 2.0 * can.nu;
  Vector center(static_cast<Index>(boundary.I.size()));
  for (std::size_t k = 0; k < boundary.I.size(); ++k) {
    const double phi = can.phi(boundary.I[k]);
    center(static_cast<Index>(k)) = phi;
    rho2 += phi * phi;
  }
  Vector fixed(static_cast<Index>(boundary.J.size()));
  for (std::size_t k = 0; k < boundary.J.size(); ++k) {
    const Index j = boundary.J[k];
    fixed(static_cast<Index>(k)) = w0(j);
    rho2 -= w0(j) * w0(j) - 2.0 * can.phi(j) * w0(j);
  }
  if (rho2 < -kNegativeRadiusTolerance) {
    throw InternalError("primal_from_dual: negative squared radius " + std::to_string(rho2) +
                        " contradicts boundary optimality");
  }

  out.xi_star = s0;
  out.value = dual_value(can, s0);
  out.representative_w = w0;
  if (rho2 <= 0.0) {
    out.shape = UniquePoint{w0};
  } else {
    SolutionSphere sphere;
    sphere.I = boundary.I;
    sphere.J = boundary.J;
    sphere.center = std::move(center);
    sphere.fixed = std::move(fixed);
    sphere.radius = std::sqrt(rho2);
    out.representative_w(boundary.I.front()) += sphere.radius;
    out.shape = std::move(sphere);
  }
  out.representative_x = recover_x(can, out.representative_w);
  return out;
}

}  // namespace dwell
