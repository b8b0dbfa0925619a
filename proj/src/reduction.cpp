#include "dwell/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

constexpr double kRankCutoff = 1e-10;
constexpr double kPsdTolerance = 1e-9;
constexpr double kConsistencyTolerance = 1e-9;
constexpr double kCurvatureDrop = 10.0;
constexpr double kLinearDrop = 1e4;

Matrix symmetrized(const Matrix& M) { return 0.5 * (M + M.transpose()); }

LiftMap identity_lift(Index n) {
  LiftMap lift;
  lift.U = Matrix::Zero(n, 0);
  lift.V = Matrix::Identity(n, n);
  lift.pinv = Matrix::Zero(0, 0);
  lift.y_gain = Matrix::Zero(0, n);
  lift.y_offset = Vector::Zero(0);
  lift.W = Matrix::Zero(0, 0);
  return lift;
}

}  // namespace

std::string_view to_string(ReductionBranch branch) {
  switch (branch) {
    case ReductionBranch::FullRank: return "full_rank";
    case ReductionBranch::IndefiniteNullSpace: return "indefinite_null_space";
    case ReductionBranch::LinearDescent: return "linear_descent";
    case ReductionBranch::Decoupled: return "decoupled";
    case ReductionBranch::PseudoInverse: return "pseudo_inverse";
    case ReductionBranch::InconsistentNullSpace: return "inconsistent_null_space";
  }
  return "unknown";
}

NullSpaceSplit null_space_basis(const Matrix& B) {
  const Index n = B.cols();
  Eigen::JacobiSVD<Matrix> svd(B, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > kRankCutoff * smax) ++rank;
  }
  NullSpaceSplit split;
  split.r = n - rank;
  split.V = svd.matrixV().leftCols(rank);
  split.U = svd.matrixV().rightCols(split.r);
  return split;
}

Vector lift_solution(const LiftMap& lift, const Vector& z) {
  if (z.size() != lift.reduced_dimension()) {
    throw InputError("lift_solution: z has dimension " + std::to_string(z.size()) +
                     ", expected " + std::to_string(lift.reduced_dimension()));
  }
  Vector x = lift.V * z;
  if (lift.U.cols() > 0) {
    const Vector y = lift.y_gain * z + lift.y_offset;
    x += lift.U * y;
  }
  return x;
}

ReductionOutcome reduce(const DwpInstance& inst) {
  const Index n = inst.n();
  NullSpaceSplit split = null_space_basis(inst.B());
  if (split.r == 0) {
    return {ReductionBranch::FullRank, Reduced{inst, identity_lift(n)}};
  }

  const Matrix& U = split.U;
  const Matrix& V = split.V;
  const Matrix& A = inst.A();
  const Matrix A_uu = symmetrized(U.transpose() * A * U);
  const Matrix A_uv = U.transpose() * A * V;
  const Vector Ut_f = U.transpose() * inst.f();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(A_uu);
  const Vector& lambda = eig.eigenvalues();  // ascending
  const Matrix& Q = eig.eigenvectors();
  const double lambda_scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  const double null_cutoff = kPsdTolerance * lambda_scale;

  // (a) negative curvature inside null(B): B x is unchanged along U v, so the
  // quartic term is frozen and the quadratic term drives the objective down.
  if (lambda(0) < -null_cutoff) {
    Vector u = U * Q.col(0);
    if (inst.f().dot(u) < 0.0) u = -u;  // linear term descends too
    u *= std::sqrt(2.0 * kCurvatureDrop / -lambda(0));
    return {ReductionBranch::IndefiniteNullSpace,
            Unbounded{DescentCertificate{Vector::Zero(n), u}}};
  }

  // Split the eigenbasis of A_uu into its range and null space W.
  std::vector<Index> null_idx;
  std::vector<Index> range_idx;
  for (Index i = 0; i < lambda.size(); ++i) {
    (std::abs(lambda(i)) <= null_cutoff ? null_idx : range_idx).push_back(i);
  }
  Matrix W(split.r, static_cast<Index>(null_idx.size()));
  for (std::size_t k = 0; k < null_idx.size(); ++k) W.col(static_cast<Index>(k)) = Q.col(null_idx[k]);
  Matrix pinv = Matrix::Zero(split.r, split.r);
  for (Index i : range_idx) pinv += Q.col(i) * Q.col(i).transpose() / lambda(i);

  const bool zero_block = range_idx.empty();

  // Along y = W beta the inner problem is linear in beta with coefficient
  // W^T (A_uv z - U^T f); it is bounded only if that vanishes for every z.
  if (W.cols() > 0) {
    const Matrix Wt_Auv = W.transpose() * A_uv;
    const Vector Wt_Utf = W.transpose() * Ut_f;
    const double tol = kConsistencyTolerance *
                       std::max({1.0, A.cwiseAbs().maxCoeff(), inst.f().cwiseAbs().maxCoeff()});
    const bool coupled = Wt_Auv.size() > 0 && Wt_Auv.cwiseAbs().maxCoeff() > tol;
    const bool linear = Wt_Utf.cwiseAbs().maxCoeff() > tol;
    if (coupled || linear) {
      Vector z0 = Vector::Zero(V.cols());
      if (!linear) {
        Eigen::JacobiSVD<Matrix> svd(Wt_Auv, Eigen::ComputeFullV);
        z0 = svd.matrixV().col(0);
      }
      const Vector h = Wt_Auv * z0 - Wt_Utf;
      const Vector beta_dir = -h / h.norm();
      // Objective along the ray: const + t * (U W beta_dir)^T (A V z0 - f)
      //                        = const - t |h|.
      const double scale = kLinearDrop / h.norm();
      const Vector u = scale * (U * (W * beta_dir));
      const auto branch = zero_block ? ReductionBranch::LinearDescent
                                     : ReductionBranch::InconsistentNullSpace;
      return {branch, Unbounded{DescentCertificate{V * z0, u}}};
    }
  }

  // Eliminate y analytically. With y* = -A_uu^+ (A_uv z - U^T f):
  //   A_sub = A_vv - A_uv^T A_uu^+ A_uv
  //   f_sub = V^T f - A_uv^T A_uu^+ U^T f
  //   const -= 1/2 f^T U A_uu^+ U^T f
  const Matrix A_vv = V.transpose() * A * V;
  Matrix A_sub = symmetrized(A_vv - A_uv.transpose() * pinv * A_uv);
  Vector f_sub = V.transpose() * inst.f() - A_uv.transpose() * (pinv * Ut_f);
  const double offset = inst.constant_offset() - 0.5 * Ut_f.dot(pinv * Ut_f);
  DwpInstance sub(std::move(A_sub), inst.B() * V, inst.c(), inst.d(), std::move(f_sub), offset);

  LiftMap lift;
  lift.U = U;
  lift.V = V;
  lift.pinv = pinv;
  lift.y_gain = -pinv * A_uv;
  lift.y_offset = pinv * Ut_f;
  lift.W = std::move(W);

  const auto branch = zero_block ? ReductionBranch::Decoupled : ReductionBranch::PseudoInverse;
  return {branch, Reduced{std::move(sub), std::move(lift)}};
}

}  // namespace dwell
