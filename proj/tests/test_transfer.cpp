#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hcspec/errors.hpp"
#include "hcspec/media.hpp"
#include "hcspec/transfer.hpp"

using namespace hcs;
using std::numbers::pi;

namespace {

// Plain Prüfer counter on the defect medium built from scratch: n periods (stiff 1/4,
// soft 1/2 with q = (1/(4n))², stiff 1/4 of the period 1/(4n)) on each side of (1/4, 3/4).
struct Piece {
  double len, q;
};

std::vector<Piece> oracle_medium(int n) {
  const double P = 1.0 / (4 * n), soft = P * P;
  std::vector<Piece> side;
  for (int i = 0; i < n; ++i) {
    side.push_back({P / 4, 1.0});
    side.push_back({P / 2, soft});
    side.push_back({P / 4, 1.0});
  }
  std::vector<Piece> out = side;
  out.push_back({0.5, 2.0});
  out.insert(out.end(), side.begin(), side.end());
  return out;
}

int oracle_count(const std::vector<Piece>& segs, double lam, bool dirichlet) {
  double phi = dirichlet ? 0.0 : pi / 2;
  for (const auto& s : segs) {
    const double w = std::sqrt(lam / s.q), c = s.q * w;
    double k = std::floor(phi / pi), r = phi - k * pi;
    double psi = k * pi + std::atan2(c * std::sin(r), std::cos(r)) + w * s.len;
    k = std::floor(psi / pi);
    r = psi - k * pi;
    phi = k * pi + std::atan2(std::sin(r) / c, std::cos(r));
  }
  const double beta = dirichlet ? pi : pi / 2;
  return phi > beta ? static_cast<int>(std::ceil((phi - beta) / pi)) : 0;
}

CoefficientProfile string(double len = 1.0, double q = 1.0, double r = 0.0) {
  Segment s;
  s.length = len;
  s.q = q;
  s.r = r;
  return CoefficientProfile({s});
}

// Single eigenvalue in a narrow window around a reference value.
double only_near(const CoefficientProfile& p, BoundaryKind bc, double ref) {
  auto ev = eigenvalues_in(p, bc, {ref * (1 - 1e-4), ref * (1 + 1e-4)});
  REQUIRE(ev.size() == 1);
  return ev[0].lambda;
}

}  // namespace

TEST_CASE("transfer matrices are unimodular") {
  auto p = build_paper_defect_medium(128);
  for (double lam : {1.0, 100.0, 700.0}) {
    auto t = propagate(p, lam);
    CHECK(std::abs(t.det() - 1.0) <= 1e-12);
  }
  auto seg = segment_transfer(p.segment(0), 100.0);
  CHECK(std::abs(seg.entry_det() - 1.0) <= 1e-12);
}

TEST_CASE("homogeneous string spectra") {
  auto p = string();
  auto d = eigenvalues_in(p, BoundaryKind::Dirichlet, {1.0, 400.0});
  REQUIRE(d.size() == 6);
  for (int k = 1; k <= 6; ++k) CHECK(d[k - 1].lambda == doctest::Approx(k * k * pi * pi).epsilon(1e-10));

  auto nm = eigenvalues_in(p, BoundaryKind::Neumann, {-1.0, 100.0});
  REQUIRE(nm.size() == 4);
  CHECK(std::abs(nm[0].lambda) < 1e-10);
  for (int k = 1; k <= 3; ++k) CHECK(nm[k].lambda == doctest::Approx(k * k * pi * pi).epsilon(1e-10));

  auto per = eigenvalues_in(p, BoundaryKind::Periodic, {-1.0, 200.0});
  REQUIRE(per.size() == 3);
  CHECK(per[0].multiplicity == 1);
  CHECK(per[1].lambda == doctest::Approx(4 * pi * pi).epsilon(1e-10));
  CHECK(per[1].multiplicity == 2);
  CHECK(per[2].lambda == doctest::Approx(16 * pi * pi).epsilon(1e-10));
  CHECK(per[2].multiplicity == 2);

  auto anti = eigenvalues_in(p, BoundaryKind::Antiperiodic, {1.0, 100.0});
  REQUIRE(anti.size() == 2);
  CHECK(anti[0].lambda == doctest::Approx(pi * pi).epsilon(1e-10));
  CHECK(anti[0].multiplicity == 2);
  CHECK(anti[1].lambda == doctest::Approx(9 * pi * pi).epsilon(1e-10));
}

TEST_CASE("oblique incidence shifts by polarization") {
  auto p = string(1.0, 2.0, 1.0);
  TransferOptions te, tm;
  te.wave = {0.5, Polarization::TE};
  tm.wave = {0.5, Polarization::TM};
  auto a = eigenvalues_in(p, BoundaryKind::Dirichlet, {0.0, 30.0}, te);
  auto b = eigenvalues_in(p, BoundaryKind::Dirichlet, {0.0, 30.0}, tm);
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(a[0].lambda == doctest::Approx(2 * pi * pi + 1 + 2 * 0.25).epsilon(1e-10));
  CHECK(b[0].lambda == doctest::Approx(2 * (pi * pi + 1 + 0.25)).epsilon(1e-10));
}

TEST_CASE("counts agree with an independent Pruefer counter") {
  for (int n : {8, 32}) {
    auto p = build_paper_defect_medium(n);
    auto ref = oracle_medium(n);
    for (double lam : {5.0, 50.0, 77.0, 120.0, 300.0, 650.0, 1000.0}) {
      CHECK(count_below(p, lam, BoundaryKind::Dirichlet) == static_cast<std::size_t>(oracle_count(ref, lam, true)));
      CHECK(count_below(p, lam, BoundaryKind::Neumann) == static_cast<std::size_t>(oracle_count(ref, lam, false)));
    }
  }
}

TEST_CASE("defect eigenvalues n=8 match the frozen oracle") {
  // tests/oracles/trapped_values.py
  auto p = build_paper_defect_medium(8);
  const double dir[] = {75.7676251044, 293.9537543157, 622.2747716284, 682.6578731339, 1187.8849487132};
  const double neu[] = {75.7676253148, 293.9537543157, 622.2747866945, 682.6578731414, 1187.8849487132};
  for (int i = 0; i < 5; ++i) {
    CHECK(only_near(p, BoundaryKind::Dirichlet, dir[i]) == doctest::Approx(dir[i]).epsilon(1e-9));
    CHECK(only_near(p, BoundaryKind::Neumann, neu[i]) == doctest::Approx(neu[i]).epsilon(1e-9));
  }
}

TEST_CASE("defect eigenvalues n=128 match the frozen oracle") {
  auto p = build_paper_defect_medium(128);
  const double dir[] = {78.7303566844, 314.2405703845, 708.3803185651, 1258.1538531501};
  const double neu[] = {78.7303566844, 314.2405703844, 708.3803185651, 1258.1538531501};
  for (int i = 0; i < 4; ++i) {
    CHECK(only_near(p, BoundaryKind::Dirichlet, dir[i]) == doctest::Approx(dir[i]).epsilon(1e-9));
    CHECK(only_near(p, BoundaryKind::Neumann, neu[i]) == doctest::Approx(neu[i]).epsilon(1e-9));
  }
}

TEST_CASE("eigenfunctions are normalized and continuous") {
  auto p = build_paper_defect_medium(8);
  auto ev = eigenvalues_in(p, BoundaryKind::Dirichlet, {70.0, 80.0});
  REQUIRE(ev.size() == 1);
  EigenfunctionOptions eo;
  eo.samples_per_segment = 64;
  auto sol = eigenfunction(p, BoundaryKind::Dirichlet, ev[0].lambda, eo);
  CHECK(trapezoid_norm2(sol.grid, sol.values) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sol.values.front()) < 1e-6);
  CHECK(std::abs(sol.values.back()) < 1e-6);
  for (std::size_t i = 1; i < sol.grid.size(); ++i) CHECK(sol.grid[i] >= sol.grid[i - 1]);
  // no jumps beyond what the sampling allows
  double umax = 0.0, jump = 0.0;
  for (std::size_t i = 0; i < sol.values.size(); ++i) umax = std::max(umax, std::abs(sol.values[i]));
  for (std::size_t i = 1; i < sol.values.size(); ++i) jump = std::max(jump, std::abs(sol.values[i] - sol.values[i - 1]));
  CHECK(jump < 0.2 * umax);

  auto hom = eigenfunction(string(), BoundaryKind::Dirichlet, pi * pi);
  for (std::size_t i = 0; i < hom.grid.size(); ++i)
    CHECK(hom.values[i] == doctest::Approx(std::sqrt(2.0) * std::sin(pi * hom.grid[i])).epsilon(1e-8));
}

TEST_CASE("periodic eigenfunction of a trapped mode decays away from the defect") {
  auto p = build_paper_defect_medium(32);
  auto ev = eigenvalues_in(p, BoundaryKind::Periodic, {300.0, 320.0});
  REQUIRE(ev.size() == 1);
  auto sol = eigenfunction(p, BoundaryKind::Periodic, ev[0].lambda);
  double inside = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    if (sol.grid[i] > 0.25 && sol.grid[i] < 0.75) inside = std::max(inside, std::abs(sol.values[i]));
    if (sol.grid[i] < 0.02 || sol.grid[i] > 0.98) edge = std::max(edge, std::abs(sol.values[i]));
  }
  CHECK(edge < 1e-3 * inside);
}

TEST_CASE("transfer error paths") {
  auto p = string();
  CHECK_THROWS_AS(eigenfunction(p, BoundaryKind::Dirichlet, 12.0), NotAnEigenvalue);
  TransferOptions opts;
  opts.bisection.max_count = 3;
  CHECK_THROWS_AS(eigenvalues_in(p, BoundaryKind::Dirichlet, {1.0, 1000.0}, opts), WindowTooWide);
  CHECK_THROWS_AS(eigenvalues_in(p, BoundaryKind::Dirichlet, {5.0, 1.0}), InvalidArgument);
}

TEST_CASE("characteristic sign changes across an eigenvalue") {
  auto p = string();
  auto lo = characteristic(p, pi * pi - 0.1, BoundaryKind::Dirichlet);
  auto hi = characteristic(p, pi * pi + 0.1, BoundaryKind::Dirichlet);
  CHECK(lo.sign() == -hi.sign());
  CHECK(monodromy_half_trace(p, 4 * pi * pi) == doctest::Approx(1.0));
}
