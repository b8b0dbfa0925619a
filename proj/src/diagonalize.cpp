#include "dwell/diagonalize.hpp"

#include <algorithm>
#include <cmath>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

constexpr double kDefiniteCutoff = 1e-10;

void fix_column_signs(Matrix& Q) {
  for (Index j = 0; j < Q.cols(); ++j) {
    Index arg = 0;
    Q.col(j).cwiseAbs().maxCoeff(&arg);
    if (Q(arg, j) < 0.0) Q.col(j) *= -1.0;
  }
}

void check_dimension(const CanonicalInstance& can, const Vector& w) {
  if (w.size() != can.n()) {
    throw InputError("canonical point has dimension " + std::to_string(w.size()) +
                     ", expected " + std::to_string(can.n()));
  }
}

}  // namespace

Congruence congruence_transform(const Matrix& A, const Matrix& G) {
  const Index n = A.rows();
  if (A.cols() != n || G.rows() != n || G.cols() != n) {
    throw InputError("congruence_transform: A and G must be square of equal size");
  }
  const Matrix Gs = 0.5 * (G + G.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> geig(Gs);
  const double gmin = geig.eigenvalues()(0);
  const double gmax = geig.eigenvalues()(n - 1);
  if (!(gmax > 0.0) || gmin <= kDefiniteCutoff * gmax) {
    throw PreconditionError("congruence_transform: G is not positive definite");
  }

  Matrix P1;
  Eigen::LLT<Matrix> llt(Gs);
  if (llt.info() == Eigen::Success) {
    // P1 = L^{-T}: solve L^T P1 = I.
    P1 = llt.matrixU().solve(Matrix::Identity(n, n));
  } else {
    // Near-singular G: inverse square root from its eigendecomposition.
    P1 = geig.eigenvectors() * geig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
  }

  const Matrix M = P1.transpose() * A * P1;
  Eigen::SelfAdjointEigenSolver<Matrix> aeig(0.5 * (M + M.transpose()));
  Matrix P2 = aeig.eigenvectors();
  fix_column_signs(P2);
  return {P1 * P2, aeig.eigenvalues()};
}

CanonicalInstance CanonicalInstance::from_parameters(Vector alpha, Vector psi, Vector phi,
                                                     double nu, double constant_offset) {
  const Index n = alpha.size();
  if (n < 1 || psi.size() != n || phi.size() != n) {
    throw InputError("canonical parameters must be nonempty vectors of equal length");
  }
  CanonicalInstance can;
  can.sigma0 = (-alpha).maxCoeff() + 0.0;  // no -0
  can.alpha = std::move(alpha);
  can.psi = std::move(psi);
  can.phi = std::move(phi);
  can.nu = nu;
  can.P = Matrix::Identity(n, n);
  can.constant_offset = constant_offset;
  return can;
}

CanonicalInstance to_canonical(const DwpInstance& inst) {
  const Matrix G = inst.B().transpose() * inst.B();
  Congruence cg;
  try {
    cg = congruence_transform(inst.A(), G);
  } catch (const PreconditionError&) {
    throw PreconditionError("to_canonical: B^T B is singular; reduce the instance first");
  }
  CanonicalInstance can;
  can.psi = cg.P.transpose() * inst.f();
  can.phi = cg.P.transpose() * (inst.B().transpose() * inst.c());
  can.nu = inst.d() - 0.5 * inst.c().squaredNorm();
  can.sigma0 = (-cg.alpha).maxCoeff() + 0.0;
  can.alpha = std::move(cg.alpha);
  can.P = std::move(cg.P);
  can.constant_offset = inst.constant_offset();
  return can;
}

double lambda_operator(const CanonicalInstance& can, const Vector& w) {
  check_dimension(can, w);
  return 0.5 * w.squaredNorm() - can.phi.dot(w) - can.nu;
}

CanonicalPoint canonical_point(const CanonicalInstance& can, const Vector& w) {
  return {w, lambda_operator(can, w)};
}

double canonical_objective(const CanonicalInstance& can, const CanonicalPoint& point) {
  check_dimension(can, point.w);
  const Vector& w = point.w;
  return 0.5 * point.xi * point.xi + 0.5 * can.alpha.dot(w.cwiseAbs2()) - can.psi.dot(w) +
         can.constant_offset;
}

double canonical_objective(const CanonicalInstance& can, const Vector& w) {
  return canonical_objective(can, canonical_point(can, w));
}

Vector recover_x(const CanonicalInstance& can, const Vector& w) {
  check_dimension(can, w);
  return can.P * w;
}

Vector to_w(const CanonicalInstance& can, const Vector& x) {
  check_dimension(can, x);
  return can.P.partialPivLu().solve(x);
}

}  // namespace dwell
