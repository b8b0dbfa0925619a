#include <doctest.h>

#include "dwell/dual_solver.hpp"
#include "dwell/errors.hpp"
#include "dwell/oracle.hpp"
#include "dwell/reduction.hpp"
#include "support.hpp"

using namespace dwell;
using namespace dwell::test;

namespace {

CanonicalInstance random_canonical(std::mt19937_64& rng, Index n) {
  return CanonicalInstance::from_parameters(uniform_vector(rng, n, -3, 3), uniform_vector(rng, n, -3, 3),
                                            uniform_vector(rng, n, -3, 3),
                                            std::uniform_real_distribution<double>(-5, 40)(rng));
}

CanonicalInstance rigged_canonical(std::mt19937_64& rng, Index n, Index critical) {
  const DwpInstance inst = rigged_hard_case_instance(rng, n, critical);
  return to_canonical(inst);
}

}  // namespace

TEST_CASE("dual value at the examples") {
  const CanonicalInstance c1 = to_canonical(example1());
  CHECK(std::abs(dual_value(c1, 2.522) + 49.109) <= 1e-2);
  CHECK(dual_value(to_canonical(example3()), 0.0) == 0.0);
  CHECK(std::abs(dual_value(to_canonical(example2()), 4.8475) + 243.416) <= 1e-2);
}

TEST_CASE("dual value outside the domain") {
  const CanonicalInstance c1 = to_canonical(example1());
  CHECK_THROWS_AS(dual_value(c1, 1.0), DomainError);
  CHECK_THROWS_AS(dual_value(c1, 2.0), DomainError);  // pole: psi + sigma0 phi = -3
  CHECK_THROWS_AS(w_of_sigma(c1, 2.0), DomainError);
}

TEST_CASE("dual derivative at the examples") {
  CHECK(std::abs(dual_derivative(to_canonical(example3()), 1e-12) + 38.0) <= 1e-9);
  CHECK(dual_derivative(to_canonical(example3()), 0.0) == -38.0);
  CHECK(std::abs(dual_derivative(to_canonical(example1()), 2.522)) <= 1e-2);
}

TEST_CASE("dual derivative matches central differences") {
  std::mt19937_64 rng(71);
  int bad = 0;
  for (int k = 0; k < 100; ++k) {
    const CanonicalInstance can = random_canonical(rng, 1 + k % 4);
    const double s = can.sigma0 + std::uniform_real_distribution<double>(0.2, 10)(rng);
    const double h = 1e-6;
    const double fd = (dual_value(can, s + h) - dual_value(can, s - h)) / (2 * h);
    if (!rel_close(dual_derivative(can, s), fd, 1e-5)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("w of sigma") {
  CHECK(std::abs(w_of_sigma(to_canonical(example1()), 2.522)(0) + 7.748) <= 1e-2);
  const CanonicalInstance zero =
      CanonicalInstance::from_parameters(Vector::Constant(2, 1.0), Vector::Zero(2), Vector::Zero(2), 3.0);
  CHECK(w_of_sigma(zero, 0.5).norm() == 0.0);
  const CanonicalInstance c3 = to_canonical(example3());
  CHECK(w_of_sigma(c3, 0.0) == c3.phi);
}

TEST_CASE("solve_dual on the examples") {
  const DualResult r1 = solve_dual(to_canonical(example1()));
  REQUIRE(std::holds_alternative<InteriorDual>(r1));
  CHECK(std::abs(std::get<InteriorDual>(r1).sigma_star - 2.5218869458699555) <= 1e-9);

  const DualResult r2 = solve_dual(to_canonical(example2()));
  REQUIRE(std::holds_alternative<InteriorDual>(r2));
  CHECK(std::abs(std::get<InteriorDual>(r2).sigma_star - 4.8475125361965) <= 1e-9);

  const DualResult r3 = solve_dual(to_canonical(example3()));
  REQUIRE(std::holds_alternative<BoundaryDual>(r3));
  const BoundaryDual& b = std::get<BoundaryDual>(r3);
  CHECK(b.sigma0 == 0.0);
  CHECK(std::abs(b.g_limit + 38.0) <= 1e-9);
  CHECK(b.I == std::vector<Index>{0, 1});
  CHECK(b.J.empty());
}

TEST_CASE("pure quadratic dual is interior at zero") {
  const CanonicalInstance can =
      CanonicalInstance::from_parameters(Vector::Constant(1, 1.0), Vector::Zero(1), Vector::Zero(1), 0.0);
  const DualResult r = solve_dual(can);
  REQUIRE(std::holds_alternative<InteriorDual>(r));
  CHECK(std::abs(std::get<InteriorDual>(r).sigma_star) <= 1e-10);
}

TEST_CASE("interior root satisfies the stopping rule") {
  std::mt19937_64 rng(73);
  for (int k = 0; k < 50; ++k) {
    const CanonicalInstance can = random_canonical(rng, 1 + k % 5);
    const DualResult r = solve_dual(can);
    if (const auto* in = std::get_if<InteriorDual>(&r)) {
      CHECK(in->sigma_star > can.sigma0);
      CHECK(std::abs(dual_derivative(can, in->sigma_star)) <= 1e-8 * std::max(1.0, std::abs(can.nu)));
    }
  }
}

TEST_CASE("primal from dual: example 3 sphere") {
  const CanonicalInstance can = to_canonical(example3());
  const GlobalSolutionSet sol = primal_from_dual(can, solve_dual(can));
  REQUIRE(sol.is_sphere());
  const SolutionSphere& s = std::get<SolutionSphere>(sol.shape);
  CHECK(std::abs(s.radius * s.radius - 76.0) <= 1e-9);
  CHECK(s.center.norm() == 0.0);
  CHECK(sol.value == 0.0);
  CHECK(std::abs(sol.representative_w(0) - std::sqrt(76.0)) <= 1e-12);
  CHECK(sol.representative_w(1) == 0.0);
  std::mt19937_64 rng(79);
  for (int k = 0; k < 10; ++k) {
    const Vector w = s.point(uniform_vector(rng, 2, -1, 1));
    CHECK(std::abs(canonical_objective(can, w)) <= 1e-9);
  }
}

TEST_CASE("primal from dual: example 1 unique point") {
  const CanonicalInstance can = to_canonical(example1());
  const GlobalSolutionSet sol = primal_from_dual(can, solve_dual(can));
  REQUIRE_FALSE(sol.is_sphere());
  CHECK(std::abs(std::get<UniquePoint>(sol.shape).w(0) + 7.748) <= 1e-3);
  CHECK(std::abs(sol.value + 49.109) <= 1e-3);
  CHECK(std::abs(sol.xi_star - 2.522) <= 1e-3);
}

TEST_CASE("degenerate boundary collapses to a point") {
  const CanonicalInstance can =
      CanonicalInstance::from_parameters(Vector::Zero(1), Vector::Zero(1), Vector::Zero(1), 0.0);
  const DualResult r = solve_dual(can);
  REQUIRE(std::holds_alternative<BoundaryDual>(r));
  CHECK(std::get<BoundaryDual>(r).g_limit == 0.0);
  const GlobalSolutionSet sol = primal_from_dual(can, r);
  REQUIRE_FALSE(sol.is_sphere());
  CHECK(std::get<UniquePoint>(sol.shape).w(0) == 0.0);
  CHECK(sol.value == 0.0);
}

TEST_CASE("gap function") {
  const CanonicalInstance c1 = to_canonical(example1());
  CHECK(gap_function(c1, Vector::Constant(1, 1.0), 3.0) == 0.5);
  CHECK(gap_function(c1, Vector::Zero(1), 3.0) == 0.0);
  std::mt19937_64 rng(83);
  for (int k = 0; k < 50; ++k) {
    const CanonicalInstance can = random_canonical(rng, 3);
    const double s = can.sigma0 + std::uniform_real_distribution<double>(0, 5)(rng);
    CHECK(gap_function(can, uniform_vector(rng, 3, -5, 5), s) >= 0.0);
  }
}

TEST_CASE("total complementary function") {
  const CanonicalInstance c1 = to_canonical(example1());
  CHECK(w_of_sigma(c1, 3.0)(0) == doctest::Approx(-5.0).epsilon(1e-14));
  CHECK(total_complementary(c1, Vector::Constant(1, -5.0), 3.0) == doctest::Approx(-53.0).epsilon(1e-14));
  CHECK(dual_value(c1, 3.0) == doctest::Approx(-53.0).epsilon(1e-14));

  std::mt19937_64 rng(89);
  for (int k = 0; k < 50; ++k) {
    const CanonicalInstance can = random_canonical(rng, 1 + k % 4);
    const double s = can.sigma0 + std::uniform_real_distribution<double>(0.1, 5)(rng);
    const Vector ws = w_of_sigma(can, s);
    const double dv = dual_value(can, s);
    CHECK(rel_close(total_complementary(can, ws, s), dv, 1e-10));
    double sampled_min = INFINITY;
    for (int j = 0; j < 200; ++j) {
      const Vector w = ws + uniform_vector(rng, can.n(), -1, 1);
      sampled_min = std::min(sampled_min, total_complementary(can, w, s));
    }
    CHECK(sampled_min >= dv - 1e-8);
  }
}

TEST_CASE("weak duality on random canonical instances") {
  std::mt19937_64 rng(97);
  double worst = INFINITY;
  for (int k = 0; k < 20; ++k) {
    const CanonicalInstance can = random_canonical(rng, 1 + k % 4);
    for (int j = 0; j < 100; ++j) {
      const double s = can.sigma0 + std::exp(std::uniform_real_distribution<double>(-6, 3)(rng));
      const Vector w = uniform_vector(rng, can.n(), -8, 8);
      worst = std::min(worst, canonical_objective(can, w) - dual_value(can, s));
    }
  }
  CHECK(worst >= -1e-8);
}

TEST_CASE("dual is concave and its derivative decreasing") {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 20; ++k) {
    const CanonicalInstance can = random_canonical(rng, 1 + k % 4);
    double prev_g = INFINITY;
    for (int j = 1; j <= 200; ++j) {
      const double s = can.sigma0 + 0.05 * j;
      const double a = dual_value(can, s - 0.02), b = dual_value(can, s), c = dual_value(can, s + 0.02);
      CHECK(a - 2 * b + c <= 1e-8 * std::max(1.0, std::abs(b)));
      const double g = dual_derivative(can, s);
      CHECK(g < prev_g + 1e-10 * std::max(1.0, std::abs(g)));
      prev_g = g;
    }
  }
}

TEST_CASE("zero duality gap at the recovered primal point") {
  std::mt19937_64 rng(103);
  for (int k = 0; k < 40; ++k) {
    const CanonicalInstance can =
        k % 2 ? random_canonical(rng, 1 + k % 4) : rigged_canonical(rng, 2 + k % 3, 1 + k % 2);
    const DualResult r = solve_dual(can);
    const GlobalSolutionSet sol = primal_from_dual(can, r);
    CHECK(std::abs(canonical_objective(can, sol.representative_w) - sol.value) <=
          1e-6 * std::max(1.0, std::abs(sol.value)));
  }
}

TEST_CASE("rigged hard cases end on the boundary or at a nearby root") {
  std::mt19937_64 rng(107);
  int boundary = 0;
  for (int k = 0; k < 30; ++k) {
    const CanonicalInstance can = rigged_canonical(rng, 3, 1 + k % 2);
    CHECK(finite_at_sigma0(can));
    CHECK(critical_indices(can).size() >= static_cast<std::size_t>(1 + k % 2));
    const DualResult r = solve_dual(can);
    const GlobalSolutionSet sol = primal_from_dual(can, r);
    if (const auto* b = std::get_if<BoundaryDual>(&r)) {
      ++boundary;
      CHECK(b->g_limit <= 0.0);
      CHECK(std::abs(dual_value(can, b->sigma0) - sol.value) <= 1e-8 * std::max(1.0, std::abs(sol.value)));
      if (const auto* sphere = std::get_if<SolutionSphere>(&sol.shape)) {
        for (int j = 0; j < 10; ++j) {
          const Vector w = sphere->point(uniform_vector(rng, static_cast<Index>(sphere->I.size()), -1, 1));
          CHECK(std::abs(canonical_objective(can, w) - sol.value) <= 1e-8 * std::max(1.0, std::abs(sol.value)));
        }
      }
    }
  }
  CHECK(boundary > 0);
}

TEST_CASE("tolerances") {
  const CanonicalInstance c1 = to_canonical(example1());
  CHECK(hard_case_tolerance(c1) == doctest::Approx(1e-8 * (1 + 2 * 2)));
  CHECK(tie_tolerance(c1) == doctest::Approx(2e-9));
  CHECK(critical_indices(c1) == std::vector<Index>{0});
  CHECK_FALSE(finite_at_sigma0(c1));
}
