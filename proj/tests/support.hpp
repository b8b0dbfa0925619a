#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "dwell/instance.hpp"

namespace dwell::test {

inline DwpInstance example1() {
  Matrix A(1, 1);
  A << -2.0;
  Matrix B(2, 1);
  B << 0.0, -1.0;
  Vector c(2);
  c << 0.0, 2.0;
  Vector f(1);
  f << 1.0;
  return DwpInstance(A, B, c, 14.0, f);
}

inline DwpInstance example2() {
  Matrix A(2, 2);
  A << 1.0, 0.0, 0.0, -2.0;
  Matrix B(2, 2);
  B << -0.07, 0.04, -0.01, -1.0;
  Vector c(2);
  c << -2.0, 0.0;
  Vector f(2);
  f << -7.0, -22.0;
  return DwpInstance(A, B, c, 28.0, f);
}

// Mexican hat
inline DwpInstance example3() {
  return DwpInstance(Matrix::Zero(2, 2), Matrix::Identity(2, 2), Vector::Zero(2), 38.0, Vector::Zero(2));
}

inline DwpInstance sdc_failure() {
  Matrix A(2, 2);
  A << 1.0, -1.0, -1.0, 0.0;
  Matrix B(2, 2);
  B << 1.0, -2.0, 3.0, -6.0;
  return DwpInstance(A, B, Vector::Zero(2), 0.0, Vector::Zero(2));
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

inline Vector uniform_vector(std::mt19937_64& rng, Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Vector central_difference(const DwpInstance& inst, const Vector& x, double h) {
  Vector g(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (evaluate_objective(inst, xp) - evaluate_objective(inst, xm)) / (2 * h);
  }
  return g;
}

inline std::string data_file(const std::string& name) { return std::string(DWELL_DATA_DIR) + "/" + name; }

}  // namespace dwell::test
