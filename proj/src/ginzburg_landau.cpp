#include "dwell/ginzburg_landau.hpp"

#include <cmath>
#include <string>

#include "dwell/errors.hpp"

namespace dwell {

void GridSpec::validate() const {
  if (s < 1 || t < 1) throw InputError("grid needs s >= 1 and t >= 1");
  if (!(gl_alpha > 0.0) || !std::isfinite(gl_alpha)) throw InputError("alpha must be positive");
  if (!(gl_beta > 0.0) || !std::isfinite(gl_beta)) throw InputError("beta must be positive");
}

Index node_index(const GridSpec& spec, int i, int j) {
  return static_cast<Index>(i - 1) + static_cast<Index>(j - 1) * (spec.s + 1);
}

double discrete_energy(const GridSpec& spec, const Vector& e) {
  spec.validate();
  if (e.size() != spec.nodes()) {
    throw InputError("field has " + std::to_string(e.size()) + " entries, grid has " +
                     std::to_string(spec.nodes()) + " nodes");
  }
  const double s = spec.s;
  const double t = spec.t;
  const double wx = s / (2.0 * t);
  const double wy = t / (2.0 * s);
  const double ww = spec.gl_alpha / (2.0 * s * t);
  double energy = 0.0;
  for (int j = 1; j <= spec.t; ++j) {
    for (int i = 1; i <= spec.s; ++i) {
      const double here = e(node_index(spec, i, j));
      const double dx = e(node_index(spec, i + 1, j)) - here;
      const double dy = e(node_index(spec, i, j + 1)) - here;
      const double well = 0.5 * here * here - spec.gl_beta;
      energy += wx * dx * dx + wy * dy * dy + ww * well * well;
    }
  }
  return energy;
}

DwpInstance build_dwp_instance(const GridSpec& spec) {
  spec.validate();
  const Index n = spec.nodes();
  const double s = spec.s;
  const double t = spec.t;
  const double wx = s / t;
  const double wy = t / s;

  Matrix A = Matrix::Zero(n, n);
  auto add_pair = [&A](Index p, Index q, double weight) {
    A(p, p) += weight;
    A(q, q) += weight;
    A(p, q) -= weight;
    A(q, p) -= weight;
  };
  for (int j = 1; j <= spec.t; ++j) {
    for (int i = 1; i <= spec.s; ++i) {
      const Index p = node_index(spec, i, j);
      add_pair(p, node_index(spec, i + 1, j), wx);
      add_pair(p, node_index(spec, i, j + 1), wy);
    }
  }
  const double ratio = spec.gl_alpha / (t * s);
  A.diagonal().array() -= ratio * spec.gl_beta;

  Matrix B = std::pow(ratio, 0.25) * Matrix::Identity(n, n);
  const double offset = 0.5 * spec.gl_alpha * spec.gl_beta * spec.gl_beta;
  return DwpInstance(std::move(A), std::move(B), Vector::Zero(n), 0.0, Vector::Zero(n), offset);
}

UpperBoundCheck upper_bound_check(const GridSpec& spec, const Vector& e) {
  return {evaluate_objective(build_dwp_instance(spec), e), discrete_energy(spec, e)};
}

}  // namespace dwell
