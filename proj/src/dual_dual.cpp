#include "dwell/dual_dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dwell/dual_solver.hpp"
#include "dwell/errors.hpp"

namespace dwell {

namespace {

constexpr double kFeasibilityTolerance = 1e-12;
constexpr double kBoundaryClearance = 1e-14;
constexpr int kMaxIterations = 200000;
constexpr int kMaxBacktracks = 80;
constexpr double kArmijo = 1e-4;

void check_dimension(const CanonicalInstance& can, const Vector& v, const char* what) {
  if (v.size() != can.n()) {
    throw InputError(std::string(what) + ": expected " + std::to_string(can.n()) + " entries");
  }
}

// The solver works in the shifted variable s = lambda + phi^2/2 >= 0, the
// radicand halved, so the bound and the square roots stay well conditioned.
struct ShiftedPdd {
  const CanonicalInstance& can;
  Vector abs_tau;
  Vector half_phi2;
  double linear_const;  // -sum tau phi + offset
  double sum_half_phi2;

  explicit ShiftedPdd(const CanonicalInstance& c)
      : can(c),
        abs_tau(c.tau().cwiseAbs()),
        half_phi2(0.5 * c.phi.cwiseAbs2()),
        linear_const(-c.tau().dot(c.phi) + c.constant_offset),
        sum_half_phi2(half_phi2.sum()) {}

  double value(const Vector& s) const {
    const double k = s.sum() - sum_half_phi2 - can.nu;
    const double roots = abs_tau.dot((2.0 * s).cwiseSqrt());
    return can.alpha.dot(s - half_phi2) - roots + 0.5 * k * k + linear_const;
  }

  Vector gradient(const Vector& s) const {
    const double k = s.sum() - sum_half_phi2 - can.nu;
    Vector g = (can.alpha.array() + k).matrix();
    for (Index i = 0; i < s.size(); ++i) {
      if (abs_tau(i) == 0.0) continue;
      const double root = std::sqrt(2.0 * s(i));
      g(i) -= root > 0.0 ? abs_tau(i) / root : std::numeric_limits<double>::infinity();
    }
    return g;
  }

  // Diagonal part of the Hessian; the full Hessian adds the all-ones matrix.
  Vector curvature(const Vector& s) const {
    Vector d = Vector::Zero(s.size());
    for (Index i = 0; i < s.size(); ++i) {
      if (abs_tau(i) > 0.0) d(i) = abs_tau(i) / std::pow(2.0 * s(i), 1.5);
    }
    return d;
  }
};

}  // namespace

bool lambda_feasible(const CanonicalInstance& can, const Vector& lambda) {
  check_dimension(can, lambda, "lambda_feasible");
  for (Index i = 0; i < lambda.size(); ++i) {
    if (!(lambda(i) + 0.5 * can.phi(i) * can.phi(i) >= -kFeasibilityTolerance)) return false;
  }
  return true;
}

double pdd_value(const CanonicalInstance& can, const Vector& lambda) {
  if (!lambda_feasible(can, lambda)) {
    throw DomainError("pdd_value: lambda violates lambda_i + phi_i^2/2 >= 0");
  }
  const Vector tau = can.tau();
  double roots = 0.0;
  for (Index i = 0; i < lambda.size(); ++i) {
    const double radicand = std::max(0.0, 2.0 * lambda(i) + can.phi(i) * can.phi(i));
    roots += std::abs(tau(i)) * std::sqrt(radicand);
  }
  const double k = lambda.sum() - can.nu;
  return can.alpha.dot(lambda) - roots + 0.5 * k * k - tau.dot(can.phi) + can.constant_offset;
}

Vector pdd_gradient(const CanonicalInstance& can, const Vector& lambda) {
  if (!lambda_feasible(can, lambda)) {
    throw DomainError("pdd_gradient: lambda violates lambda_i + phi_i^2/2 >= 0");
  }
  const ShiftedPdd pdd(can);
  Vector s = (lambda + pdd.half_phi2).cwiseMax(0.0);
  return pdd.gradient(s);
}

WFromLambda w_from_lambda(const CanonicalInstance& can, const Vector& lambda) {
  if (!lambda_feasible(can, lambda)) {
    throw DomainError("w_from_lambda: lambda violates lambda_i + phi_i^2/2 >= 0");
  }
  const Vector tau = can.tau();
  WFromLambda out{Vector(can.n()), std::vector<bool>(static_cast<std::size_t>(can.n()), false)};
  for (Index i = 0; i < can.n(); ++i) {
    const double root = std::sqrt(std::max(0.0, 2.0 * lambda(i) + can.phi(i) * can.phi(i)));
    out.w(i) = tau(i) >= 0.0 ? can.phi(i) + root : can.phi(i) - root;
    out.multivalued[static_cast<std::size_t>(i)] = tau(i) == 0.0;
  }
  return out;
}

LambdaFromW lambda_from_w(const CanonicalInstance& can, const Vector& w) {
  check_dimension(can, w, "lambda_from_w");
  const Vector shift = w - can.phi;
  LambdaFromW out;
  out.lambda = 0.5 * shift.cwiseAbs2() - 0.5 * can.phi.cwiseAbs2();
  out.sign_constraints_hold = (can.tau().cwiseProduct(shift).array() >= 0.0).all();
  return out;
}

double f_value(const CanonicalInstance& can, const Vector& w) {
  check_dimension(can, w, "f_value");
  const Vector lambda = 0.5 * (w - can.phi).cwiseAbs2() - 0.5 * can.phi.cwiseAbs2();
  const double k = lambda.sum() - can.nu;
  return 0.5 * k * k + can.alpha.dot(lambda) - can.tau().dot(w) + can.constant_offset;
}

PddSolution solve_pdd(const CanonicalInstance& can, double tol) {
  const ShiftedPdd pdd(can);
  const Index n = can.n();
  Vector lower(n);
  for (Index i = 0; i < n; ++i) lower(i) = pdd.abs_tau(i) > 0.0 ? kBoundaryClearance : 0.0;
  auto project = [&](const Vector& s) { return s.cwiseMax(lower); };

  const Vector start = lambda_from_w(can, w_of_sigma(can, can.sigma0 + 1.0)).lambda;
  Vector s = project(start + pdd.half_phi2);
  double value = pdd.value(s);
  Vector grad = pdd.gradient(s);
  double step = 1.0 / std::max(1.0, grad.cwiseAbs().maxCoeff());

  // Armijo search along the projection arc s(t) = P(s + t d).
  auto search = [&](const Vector& dir, double t, Vector& s_new, double& value_new) {
    for (int b = 0; b < kMaxBacktracks; ++b, t *= 0.5) {
      s_new = project(s + t * dir);
      const double slope = grad.dot(s_new - s);
      if (!(slope < 0.0)) continue;
      value_new = pdd.value(s_new);
      if (value_new <= value + kArmijo * slope) return t;
    }
    return 0.0;
  };

  PddSolution out;
  int it = 0;
  for (; it < kMaxIterations; ++it) {
    const Vector pg = project(s - grad) - s;
    out.projected_gradient_norm = pg.norm();
    if (out.projected_gradient_norm <= tol * std::max(1.0, std::abs(value))) {
      out.converged = true;
      break;
    }

    // Projected Newton: coordinates near their bound with an outward gradient
    // are held by a plain gradient step, the rest get (D + delta + 1 1^T)^{-1}.
    const double eps = std::min(1e-3, out.projected_gradient_norm);
    const Vector D = pdd.curvature(s);
    const double delta = 1e-10 * (1.0 + D.maxCoeff());
    Vector inv_m = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) {
      const bool held = s(i) - lower(i) <= eps && grad(i) > 0.0;
      if (!held) inv_m(i) = 1.0 / (D(i) + delta);
    }
    const Vector mg = inv_m.cwiseProduct(grad);
    Vector dir = -(mg - inv_m * (mg.sum() / (1.0 + inv_m.sum())));
    for (Index i = 0; i < n; ++i) {
      if (inv_m(i) == 0.0) dir(i) = -grad(i);
    }

    Vector s_new;
    double value_new = value;
    double t = search(dir, 1.0, s_new, value_new);
    if (t == 0.0) t = search(-grad, step, s_new, value_new);
    if (t == 0.0) break;  // no representable descent left

    const Vector grad_new = pdd.gradient(s_new);
    const Vector ds = s_new - s;
    const double curv = ds.dot(grad_new - grad);
    step = std::clamp(curv > 0.0 ? ds.squaredNorm() / curv : 2.0 * step, 1e-14, 1e14);

    s = s_new;
    value = value_new;
    grad = grad_new;
  }
  out.iterations = it;
  out.lambda = s - pdd.half_phi2;
  out.value = value;
  return out;
}

}  // namespace dwell
