#include <doctest.h>

#include "dwell/errors.hpp"
#include "dwell/oracle.hpp"
#include "dwell/reduction.hpp"
#include "support.hpp"

using namespace dwell;
using namespace dwell::test;

namespace {

DwpInstance make(const Matrix& A, const Matrix& B, const Vector& f) {
  return DwpInstance(A, B, Vector::Zero(B.rows()), 0.0, f);
}

Matrix row(std::initializer_list<double> v) {
  Matrix B(1, static_cast<Index>(v.size()));
  Index j = 0;
  for (double x : v) B(0, j++) = x;
  return B;
}

void check_certificate(const DwpInstance& inst, const DescentCertificate& cert) {
  const double v10 = evaluate_objective(inst, cert.at(10));
  const double v100 = evaluate_objective(inst, cert.at(100));
  const double v1000 = evaluate_objective(inst, cert.at(1000));
  CHECK(v100 < v10);
  CHECK(v1000 < v100);
  CHECK(v100 - v1000 >= 1.0);
}

void check_reduced(const DwpInstance& inst, const Reduced& red, std::uint64_t seed) {
  const Matrix G = red.sub.B().transpose() * red.sub.B();
  CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(G).eigenvalues().minCoeff() > 0.0);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 50; ++k) {
    const Vector z = uniform_vector(rng, red.sub.n(), -3, 3);
    const Vector x = lift_solution(red.lift, z);
    CHECK(rel_close(evaluate_objective(inst, x), evaluate_objective(red.sub, z), 1e-9));
    // x minimizes over its null-space fiber
    const Vector g = evaluate_gradient(inst, x);
    CHECK((red.lift.U.transpose() * g).norm() <= 1e-8 * std::max(1.0, g.norm()));
  }
}

}  // namespace

TEST_CASE("null space of the rank-one pair") {
  Matrix B(2, 2);
  B << 1, -2, 3, -6;
  const NullSpaceSplit split = null_space_basis(B);
  REQUIRE(split.r == 1);
  Vector expected(2);
  expected << 2, 1;
  expected /= std::sqrt(5.0);
  CHECK(std::abs(std::abs(split.U.col(0).dot(expected)) - 1.0) <= 1e-12);
  CHECK((B * split.U).cwiseAbs().maxCoeff() <= 1e-10 * B.cwiseAbs().maxCoeff());
}

TEST_CASE("full-column-rank B has an empty null space") {
  CHECK(null_space_basis(Matrix::Identity(3, 3)).r == 0);
  Matrix B(2, 1);
  B << 0, -1;
  const NullSpaceSplit split = null_space_basis(B);
  CHECK(split.r == 0);
  CHECK(split.U.cols() == 0);
  CHECK(split.V.cols() == 1);
}

TEST_CASE("null space split is orthonormal on random rank-deficient B") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const Index n = 2 + k % 4;
    const Index rank = 1 + k % (n - 1);
    const Matrix L = Matrix::Random(rank + 1, rank);
    const Matrix R = Matrix::Random(rank, n);
    const Matrix B = L * R;
    const NullSpaceSplit s = null_space_basis(B);
    CHECK(s.r == n - rank);
    CHECK((B * s.U).cwiseAbs().maxCoeff() <= 1e-10 * B.cwiseAbs().maxCoeff());
    CHECK((s.U.transpose() * s.U - Matrix::Identity(s.r, s.r)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((s.V.transpose() * s.V - Matrix::Identity(n - s.r, n - s.r)).cwiseAbs().maxCoeff() <= 1e-12);
    if (s.r > 0 && s.r < n) CHECK((s.U.transpose() * s.V).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("SDC-failure pair is unbounded by linear descent") {
  const DwpInstance inst = sdc_failure();
  const NullSpaceSplit split = null_space_basis(inst.B());
  CHECK(std::abs((split.U.transpose() * inst.A() * split.U)(0, 0)) <= 1e-12);
  CHECK(std::abs(std::abs((split.U.transpose() * inst.A() * split.V)(0, 0)) - 1.0) <= 1e-12);

  const ReductionOutcome out = reduce(inst);
  CHECK(out.branch == ReductionBranch::LinearDescent);
  REQUIRE(out.unbounded());
  const DescentCertificate& cert = out.certificate().certificate;
  check_certificate(inst, cert);
  CHECK(evaluate_objective(inst, cert.at(1e3)) < -1e6);
}

TEST_CASE("r = 0 passes the instance through with an identity lift") {
  const DwpInstance inst = example1();
  const ReductionOutcome out = reduce(inst);
  CHECK(out.branch == ReductionBranch::FullRank);
  REQUIRE_FALSE(out.unbounded());
  const Reduced& red = out.reduced();
  CHECK(red.sub.A() == inst.A());
  CHECK(red.sub.B() == inst.B());
  CHECK(red.sub.f() == inst.f());
  CHECK(red.sub.constant_offset() == inst.constant_offset());
  const Vector z = Vector::Constant(1, 0.37);
  CHECK(lift_solution(red.lift, z) == z);
}

TEST_CASE("A = I with the rank-one pair reduces through the pseudoinverse") {
  Matrix B(2, 2);
  B << 1, -2, 3, -6;
  const DwpInstance inst = make(Matrix::Identity(2, 2), B, Vector::Zero(2));
  const ReductionOutcome out = reduce(inst);
  CHECK(out.branch == ReductionBranch::PseudoInverse);
  REQUIRE_FALSE(out.unbounded());
  const Reduced& red = out.reduced();
  CHECK(red.sub.n() == 1);
  check_reduced(inst, red, 17);

  Box box2{{-10, 10}, {-10, 10}};
  const double original = grid_min(inst, box2, 400).value;
  const double reduced = grid_min(red.sub, Box{{-10, 10}}, 20000).value;
  CHECK(std::abs(original - reduced) <= 1e-6);
}

TEST_CASE("negative curvature on null(B) is unbounded") {
  Matrix A(2, 2);
  A << 1, 0, 0, -1;
  const DwpInstance inst = make(A, row({1, 0}), Vector::Zero(2));
  const ReductionOutcome out = reduce(inst);
  CHECK(out.branch == ReductionBranch::IndefiniteNullSpace);
  REQUIRE(out.unbounded());
  check_certificate(inst, out.certificate().certificate);
}

TEST_CASE("flat null space with a linear term is unbounded") {
  Vector f(2);
  f << 0, 1;
  Matrix A(2, 2);
  A << 1, 0, 0, 0;
  const DwpInstance inst = make(A, row({1, 0}), f);
  const ReductionOutcome out = reduce(inst);
  CHECK(out.branch == ReductionBranch::LinearDescent);
  REQUIRE(out.unbounded());
  check_certificate(inst, out.certificate().certificate);
}

TEST_CASE("fully decoupled null space drops out with y = 0") {
  Matrix A(2, 2);
  A << 1, 0, 0, 0;
  Vector f(2);
  f << 2, 0;
  const DwpInstance inst = make(A, row({1, 0}), f);
  const ReductionOutcome out = reduce(inst);
  CHECK(out.branch == ReductionBranch::Decoupled);
  REQUIRE_FALSE(out.unbounded());
  const Reduced& red = out.reduced();
  CHECK(red.sub.n() == 1);
  CHECK(red.lift.pinv.cwiseAbs().maxCoeff() == 0.0);
  const Vector z = Vector::Constant(1, 1.5);
  const Vector x = lift_solution(red.lift, z);
  CHECK((x - red.lift.V * z).norm() <= 1e-15);
  check_reduced(inst, red, 19);
}

TEST_CASE("singular PSD null block: consistent reduces, inconsistent is unbounded") {
  Matrix A = Matrix::Zero(3, 3);
  A(0, 0) = 1;
  A(1, 1) = 2;
  const Matrix B = row({1, 0, 0});

  const DwpInstance consistent = make(A, B, Vector::Zero(3));
  const ReductionOutcome ok = reduce(consistent);
  CHECK(ok.branch == ReductionBranch::PseudoInverse);
  REQUIRE_FALSE(ok.unbounded());
  CHECK(ok.reduced().lift.W.cols() == 1);
  check_reduced(consistent, ok.reduced(), 23);

  Vector f = Vector::Zero(3);
  f(2) = 1;
  const DwpInstance linear = make(A, B, f);
  const ReductionOutcome bad = reduce(linear);
  CHECK(bad.branch == ReductionBranch::InconsistentNullSpace);
  REQUIRE(bad.unbounded());
  check_certificate(linear, bad.certificate().certificate);

  Matrix coupled = A;
  coupled(0, 2) = coupled(2, 0) = 1;
  const DwpInstance coupled_inst = make(coupled, B, Vector::Zero(3));
  const ReductionOutcome bad2 = reduce(coupled_inst);
  CHECK(bad2.branch == ReductionBranch::InconsistentNullSpace);
  REQUIRE(bad2.unbounded());
  check_certificate(coupled_inst, bad2.certificate().certificate);
}

TEST_CASE("pseudoinverse part satisfies the Moore-Penrose identity") {
  std::mt19937_64 rng(29);
  for (auto coupling : {NullSpaceCoupling::PositiveDefinite, NullSpaceCoupling::SingularConsistent}) {
    for (int k = 0; k < 10; ++k) {
      const DwpInstance inst = random_rank_deficient_instance(rng, 4, 1, coupling);
      const ReductionOutcome out = reduce(inst);
      REQUIRE_FALSE(out.unbounded());
      const LiftMap& lift = out.reduced().lift;
      const Matrix Auu = lift.U.transpose() * inst.A() * lift.U;
      CHECK((Auu * lift.pinv * Auu - Auu).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, Auu.norm()));
      check_reduced(inst, out.reduced(), 31 + k);
    }
  }
}

TEST_CASE("random rank-deficient instances land in the requested branch") {
  std::mt19937_64 rng(37);
  for (int k = 0; k < 10; ++k) {
    CHECK(reduce(random_rank_deficient_instance(rng, 3, 1, NullSpaceCoupling::PositiveDefinite)).branch ==
          ReductionBranch::PseudoInverse);
    CHECK(reduce(random_rank_deficient_instance(rng, 3, 2, NullSpaceCoupling::Decoupled)).branch ==
          ReductionBranch::Decoupled);
  }
}

TEST_CASE("lift rejects wrong dimensions") {
  const ReductionOutcome out = reduce(example1());
  CHECK_THROWS_AS(lift_solution(out.reduced().lift, Vector::Zero(2)), InputError);
}

TEST_CASE("branch names") {
  CHECK(to_string(ReductionBranch::FullRank) == "full_rank");
  CHECK(to_string(ReductionBranch::LinearDescent) == "linear_descent");
}
