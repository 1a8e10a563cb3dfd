#include "doctest.h"

#include <cmath>

#include "hcspec/dispersion.hpp"
#include "hcspec/errors.hpp"
#include "hcspec/verify.hpp"

using namespace hcs;

TEST_CASE("closed-form dispersion equals the cell monodromy") {
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(200.0 * i / 99.0);
  CHECK(dispersion_vs_monodromy(0.25, 0.75, {0.1, 0.01}, grid) <= 1e-9);
  CHECK(dispersion_vs_monodromy(0.25, 0.75, {1.0}, {0.0, 3.0, 50.0}) <= 1e-12);
  CHECK(finite_eps_lhs(0.0, 0.1, 0.25, 0.75) == doctest::Approx(1.0));
  CHECK(dispersion_vs_monodromy(0.3, 0.6, {0.05}, grid) <= 1e-9);
  CHECK_THROWS_AS(dispersion_vs_monodromy(0.25, 0.75, {}, grid), InvalidArgument);
}

TEST_CASE("classical Poincare inequality on random trials") {
  auto rep = classical_poincare_check(0.25, 0.75, 1.0 / 64, 500);
  CHECK(rep.c_p == doctest::Approx(8.0));
  CHECK(rep.worst_ratio <= rep.c_p);
  CHECK(rep.worst_ratio <= rep.sharp_constant * (1 + 1e-9));
  CHECK(rep.constant_ratio == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(rep.passed);
  CHECK(rep.trials == 500);
  auto again = classical_poincare_check(0.25, 0.75, 1.0 / 64, 500);
  CHECK(again.worst_ratio == rep.worst_ratio);
}

TEST_CASE("uniform Poincare constant stays positive") {
  const std::vector<double> thetas = {0.0, 0.125, 0.25, 0.5, 0.75, 1.0 - 5e-4};
  auto t = poincare_uniform_constant(0.25, 0.75, thetas, {1.0 / 64, 1.0 / 128});
  REQUIRE(t.c.size() == 2);
  for (double m : t.min_c) CHECK(m > 0.1);
  CHECK(std::abs(t.min_c[1] / t.min_c[0] - 1) < 0.1);
  // symmetric under θ → 1 − θ
  CHECK(poincare_constant(0.25, 0.75, 0.25, 1.0 / 64) ==
        doctest::Approx(poincare_constant(0.25, 0.75, 0.75, 1.0 / 64)).epsilon(1e-8));
  PoincareOptions h1;
  h1.h1_complement = true;
  CHECK(poincare_constant(0.25, 0.75, 0.5, 1.0 / 64, h1) > 0.1);
  CHECK(poincare_theta_grid().size() == 33);
  CHECK(poincare_theta_grid_refined().size() == 67);
  CHECK_THROWS_AS(poincare_constant(0.25, 0.75, 1.0, 1.0 / 64), OutOfDomain);
  CHECK_THROWS_AS(poincare_constant(0.3, 0.75, 0.2, 1.0 / 64), InvalidArgument);
}

TEST_CASE("limit eigenvalues are continuous in theta") {
  auto rep = lambda_continuity(0.25, 0.75, 3, {8, 16, 32});
  REQUIRE(rep.ratios.size() == 2);
  for (double r : rep.ratios) CHECK(r <= 0.6);
  CHECK(rep.symmetry_error < 1e-9);
  CHECK(rep.passed);
  CHECK_THROWS_AS(lambda_continuity(0.25, 0.75, 3, {8, 12}), InvalidArgument);
}

TEST_CASE("Bloch roots match the constrained operator on n cells") {
  auto rep = bloch_vs_nq({1, 2}, 0.25, 0.75, 4, 1.0 / 256);
  REQUIRE(rep.discrepancy.size() == 2);
  CHECK(rep.worst <= 1e-3);
  CHECK_THROWS_AS(bloch_vs_nq({0}, 0.25, 0.75, 4), InvalidArgument);
}

TEST_CASE("quasiperiodic space geometry") {
  QuasiperiodicCellSpace s;
  s.theta = 0.5;
  s.elements = 8;
  CHECK(s.phase().real() == doctest::Approx(-1.0));
  CHECK(s.stiff_element(0));
  CHECK_FALSE(s.stiff_element(3));
  CHECK(s.stiff_element(7));
}
