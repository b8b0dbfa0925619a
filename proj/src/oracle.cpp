#include "dwell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

constexpr double kBisectionWidth = 1e-10;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Matrix uniform_matrix(std::mt19937_64& rng, Index rows, Index cols, double lo, double hi) {
  Matrix M(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) M(i, j) = uniform(rng, lo, hi);
  return M;
}

Vector uniform_vector(std::mt19937_64& rng, Index size, double lo, double hi) {
  return uniform_matrix(rng, size, 1, lo, hi).col(0);
}

Matrix random_symmetric(std::mt19937_64& rng, Index n) {
  const Matrix M = uniform_matrix(rng, n, n, -3.0, 3.0);
  return 0.5 * (M + M.transpose());
}

Matrix random_orthogonal(std::mt19937_64& rng, Index n) {
  Eigen::HouseholderQR<Matrix> qr(uniform_matrix(rng, n, n, -1.0, 1.0));
  return qr.householderQ() * Matrix::Identity(n, n);
}

// Divided-out w(xi); requires xi away from every pole.
Vector w_at(const CanonicalInstance& can, double xi) {
  return ((can.psi.array() + xi * can.phi.array()) / (can.alpha.array() + xi)).matrix();
}

double g_at(const CanonicalInstance& can, double xi) {
  return lambda_operator(can, w_at(can, xi)) - xi;
}

}  // namespace

std::vector<StationaryPoint> stationary_scan(const CanonicalInstance& can, double lo, double hi,
                                             int samples) {
  if (samples < 100) throw InputError("stationary_scan needs at least 100 samples");
  if (!(lo < hi)) throw InputError("stationary_scan needs lo < hi");

  const double tie = 1e-9 * std::max(1.0, can.alpha.cwiseAbs().maxCoeff());
  std::vector<double> poles;
  for (Index i = 0; i < can.n(); ++i) poles.push_back(-can.alpha(i));
  std::sort(poles.begin(), poles.end());
  poles.erase(std::unique(poles.begin(), poles.end(),
                          [tie](double a, double b) { return std::abs(a - b) <= tie; }),
              poles.end());

  const double h = (hi - lo) / samples;
  std::vector<StationaryPoint> found;

  auto record_regular = [&](double xi) {
    StationaryPoint p;
    p.xi = xi;
    p.w = w_at(can, xi);
    p.value = canonical_objective(can, p.w);
    p.kind = StationaryKind::Regular;
    found.push_back(std::move(p));
  };

  // Breakpoints: the range ends plus poles strictly inside.
  std::vector<double> cuts{lo};
  for (double p : poles) {
    if (p > lo && p < hi) cuts.push_back(p);
  }
  cuts.push_back(hi);

  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double a = cuts[piece];
    const double b = cuts[piece + 1];
    const bool a_pole = piece > 0;
    const bool b_pole = piece + 2 < cuts.size();
    std::vector<double> xs;
    const double clearance = 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b)));
    xs.push_back(a_pole ? a + clearance : a);
    const auto k0 = static_cast<long long>(std::floor((a - lo) / h)) + 1;
    for (long long k = k0;; ++k) {
      const double x = lo + static_cast<double>(k) * h;
      if (x >= b - clearance) break;
      if (x > xs.back()) xs.push_back(x);
    }
    const double last = b_pole ? b - clearance : b;
    if (last > xs.back()) xs.push_back(last);

    double x_prev = xs.front();
    double g_prev = g_at(can, x_prev);
    if (g_prev == 0.0) record_regular(x_prev);
    for (std::size_t k = 1; k < xs.size(); ++k) {
      const double x = xs[k];
      const double gx = g_at(can, x);
      if (gx == 0.0) {
        record_regular(x);
      } else if (std::isfinite(g_prev) && std::isfinite(gx) && g_prev * gx < 0.0) {
        double left = x_prev;
        double right = x;
        double g_left = g_prev;
        while (right - left > kBisectionWidth) {
          const double mid = 0.5 * (left + right);
          const double gm = g_at(can, mid);
          if (gm == 0.0) {
            left = right = mid;
            break;
          }
          if ((gm > 0.0) == (g_left > 0.0)) {
            left = mid;
            g_left = gm;
          } else {
            right = mid;
          }
        }
        record_regular(0.5 * (left + right));
      }
      x_prev = x;
      g_prev = gx;
    }
  }

  // Singular branch: at xi = -alpha_k with vanishing numerators the
  // coordinates in the tie group are free up to xi = Lambda(w).
  for (double p : poles) {
    if (p < lo || p > hi) continue;
    const double htol =
        1e-8 * std::max(1.0, can.psi.cwiseAbs().maxCoeff() + std::abs(p) * can.phi.cwiseAbs().maxCoeff());
    std::vector<Index> group;
    bool removable = true;
    for (Index i = 0; i < can.n(); ++i) {
      if (std::abs(can.alpha(i) + p) <= tie) {
        group.push_back(i);
        if (std::abs(can.psi(i) + p * can.phi(i)) > htol) removable = false;
      }
    }
    if (!removable || group.empty()) continue;
    Vector w(can.n());
    double rhs = p + can.nu;
    double phi_group = 0.0;
    for (Index i = 0; i < can.n(); ++i) {
      if (std::find(group.begin(), group.end(), i) != group.end()) {
        w(i) = can.phi(i);
        phi_group += can.phi(i) * can.phi(i);
      } else {
        w(i) = (can.psi(i) + p * can.phi(i)) / (can.alpha(i) + p);
        rhs -= 0.5 * w(i) * w(i) - can.phi(i) * w(i);
      }
    }
    const double r2 = 2.0 * rhs + phi_group;
    if (r2 < 0.0) continue;
    const double r = std::sqrt(r2);
    for (double sign : {1.0, -1.0}) {
      StationaryPoint sp;
      sp.xi = p;
      sp.w = w;
      sp.w(group.front()) += sign * r;
      sp.value = canonical_objective(can, sp.w);
      sp.kind = StationaryKind::SingularBranch;
      found.push_back(std::move(sp));
      if (r == 0.0) break;
    }
  }
  return found;
}

OracleMinimum grid_min(const DwpInstance& inst, const Box& box, int steps) {
  const Index n = inst.n();
  if (n > 3) throw InputError("grid_min is limited to n <= 3");
  if (steps < 10) throw InputError("grid_min needs at least 10 steps");
  if (static_cast<Index>(box.size()) != n) throw InputError("grid_min: box must have n intervals");

  std::vector<int> counter(static_cast<std::size_t>(n), 0);
  Vector x(n);
  OracleMinimum best{Vector::Zero(n), std::numeric_limits<double>::infinity()};
  while (true) {
    for (Index i = 0; i < n; ++i) {
      const auto& [a, b] = box[static_cast<std::size_t>(i)];
      x(i) = a + (b - a) * counter[static_cast<std::size_t>(i)] / steps;
    }
    const double v = evaluate_objective(inst, x);
    if (v < best.value) best = {x, v};
    Index k = 0;
    while (k < n && ++counter[static_cast<std::size_t>(k)] > steps) {
      counter[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return best;
}

double multistart_box_radius(const DwpInstance& inst) {
  Eigen::JacobiSVD<Matrix> svd(inst.B());
  const Vector& sv = svd.singularValues();
  double smallest = sv(0);
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * sv(0)) smallest = sv(i);
  }
  const double spread = std::sqrt(2.0 * std::abs(inst.d()) + inst.c().squaredNorm()) / smallest;
  const double a_norm = Eigen::JacobiSVD<Matrix>(inst.A()).singularValues()(0);
  return 2.0 + inst.f().norm() + a_norm + spread;
}

OracleMinimum local_descent(const DwpInstance& inst, const Vector& x0, int max_iterations) {
  Vector x = x0;
  double value = evaluate_objective(inst, x);
  Vector grad = evaluate_gradient(inst, x);
  double step = 1.0 / std::max(1.0, grad.norm());
  for (int it = 0; it < max_iterations; ++it) {
    if (grad.norm() <= 1e-10 * std::max(1.0, std::abs(value))) break;
    double trial = step;
    bool accepted = false;
    Vector x_new;
    double v_new = value;
    for (int b = 0; b < 80; ++b) {
      x_new = x - trial * grad;
      v_new = evaluate_objective(inst, x_new);
      if (v_new <= value - 1e-4 * trial * grad.squaredNorm()) {
        accepted = true;
        break;
      }
      trial *= 0.5;
    }
    if (!accepted) break;
    const Vector g_new = evaluate_gradient(inst, x_new);
    const Vector dx = x_new - x;
    const double curv = dx.dot(g_new - grad);
    step = curv > 0.0 ? dx.squaredNorm() / curv : 2.0 * trial;
    step = std::clamp(step, 1e-14, 1e14);
    x = std::move(x_new);
    value = v_new;
    grad = g_new;
  }
  return {x, value};
}

OracleMinimum multistart_min(const DwpInstance& inst, int starts, std::uint64_t seed) {
  if (starts < 1) throw InputError("multistart_min needs at least one start");
  const double radius = multistart_box_radius(inst);
  OracleMinimum best{Vector::Zero(inst.n()), std::numeric_limits<double>::infinity()};
  for (int k = 0; k < starts; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    const Vector x0 = uniform_vector(rng, inst.n(), -radius, radius);
    OracleMinimum local = local_descent(inst, x0);
    if (local.value < best.value) best = std::move(local);
  }
  return best;
}

DwpInstance random_instance(std::mt19937_64& rng, Index n, Index m) {
  Matrix A = random_symmetric(rng, n);
  Matrix B = uniform_matrix(rng, m, n, -3.0, 3.0);
  Vector c = uniform_vector(rng, m, -3.0, 3.0);
  const double d = uniform(rng, -5.0, 40.0);
  Vector f = uniform_vector(rng, n, -3.0, 3.0);
  return DwpInstance(std::move(A), std::move(B), std::move(c), d, std::move(f));
}

DwpInstance rigged_hard_case_instance(std::mt19937_64& rng, Index n, Index critical) {
  if (critical < 1 || critical > n) throw InputError("critical count must be in [1, n]");
  const Matrix Q = random_orthogonal(rng, n);
  const Vector scale = uniform_vector(rng, n, 0.5, 2.0);
  const Matrix P = Q * scale.asDiagonal();

  // critical coordinates sit strictly below the rest, so no other index ties
  Vector alpha = uniform_vector(rng, n, -3.0, 3.0);
  const double alpha_min = (critical < n ? alpha.tail(n - critical).minCoeff() : alpha(0)) - uniform(rng, 0.2, 2.0);
  for (Index i = 0; i < critical; ++i) alpha(i) = alpha_min;
  const Vector phi = uniform_vector(rng, n, -3.0, 3.0);
  Vector psi = uniform_vector(rng, n, -3.0, 3.0);
  for (Index i = 0; i < critical; ++i) psi(i) = alpha_min * phi(i);  // = -sigma0 phi_i
  const double nu = uniform(rng, -5.0, 40.0);

  const Matrix P_inv = P.inverse();
  Matrix A = P_inv.transpose() * alpha.asDiagonal() * P_inv;
  A = 0.5 * (A + A.transpose()).eval();
  Vector f = P_inv.transpose() * psi;
  const double d = nu + 0.5 * phi.squaredNorm();
  return DwpInstance(std::move(A), P_inv, phi, d, std::move(f));
}

DwpInstance random_rank_deficient_instance(std::mt19937_64& rng, Index n, Index rank,
                                           NullSpaceCoupling coupling) {
  if (rank < 1 || rank >= n) throw InputError("rank must be in [1, n)");
  const Index r = n - rank;
  if (coupling == NullSpaceCoupling::SingularConsistent && r < 2) {
    throw InputError("a singular consistent null block needs rank deficiency >= 2");
  }
  const Index m = rank + static_cast<Index>(std::uniform_int_distribution<int>(0, 1)(rng));
  const Matrix R = uniform_matrix(rng, rank, n, -3.0, 3.0);
  const Matrix B = uniform_matrix(rng, m, rank, -3.0, 3.0) * R;

  // Orthonormal bases of null(R) = null(B) and its complement from a QR of
  // the kernel, independent of the SVD used by the reduction.
  const Matrix kernel = Eigen::FullPivLU<Matrix>(R).kernel();
  Eigen::HouseholderQR<Matrix> qr(kernel);
  const Matrix Qfull = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix U = Qfull.leftCols(r);
  const Matrix V = Qfull.rightCols(rank);

  Matrix A;
  Vector f;
  switch (coupling) {
    case NullSpaceCoupling::PositiveDefinite: {
      A = random_symmetric(rng, n);
      const double lmin =
          Eigen::SelfAdjointEigenSolver<Matrix>(U.transpose() * A * U).eigenvalues()(0);
      A += (std::max(0.0, -lmin) + uniform(rng, 0.5, 2.0)) * U * U.transpose();
      f = uniform_vector(rng, n, -3.0, 3.0);
      break;
    }
    case NullSpaceCoupling::Decoupled: {
      A = V * random_symmetric(rng, rank) * V.transpose();
      f = V * uniform_vector(rng, rank, -3.0, 3.0);
      break;
    }
    case NullSpaceCoupling::SingularConsistent: {
      // Null-block curvature Kuu = G G^T with G of rank r - 1.
      const Matrix G = uniform_matrix(rng, r, r - 1, -2.0, 2.0);
      const Matrix Kuu = G * G.transpose();
      const Matrix Kuv = Kuu * uniform_matrix(rng, r, rank, -1.0, 1.0);
      const Matrix Kvv = random_symmetric(rng, rank);
      Matrix K(n, n);
      K << Kuu, Kuv, Kuv.transpose(), Kvv;
      Matrix UV(n, n);
      UV << U, V;
      A = UV * K * UV.transpose();
      f = V * uniform_vector(rng, rank, -3.0, 3.0) + U * (Kuu * uniform_vector(rng, r, -1.0, 1.0));
      break;
    }
  }
  A = 0.5 * (A + A.transpose()).eval();
  Vector c = uniform_vector(rng, m, -3.0, 3.0);
  const double d = uniform(rng, -5.0, 40.0);
  return DwpInstance(std::move(A), B, std::move(c), d, std::move(f));
}

}  // namespace dwell
