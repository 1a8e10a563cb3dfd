#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hcspec/dispersion.hpp"
#include "hcspec/errors.hpp"
#include "hcspec/fem.hpp"
#include "hcspec/media.hpp"
#include "hcspec/transfer.hpp"

using namespace hcs;
using std::numbers::pi;

namespace {

CoefficientProfile string() {
  Segment s;
  s.length = 1.0;
  return CoefficientProfile({s});
}

std::vector<double> first_fem(const CoefficientProfile& p, int refinements, BoundaryKind bc, double hi) {
  AssemblyOptions ao;
  ao.bc = bc;
  auto pencil = assemble(build_default_mesh(p, refinements), p, ao);
  std::vector<double> out;
  for (const auto& e : eigenvalues_in_window(pencil, {-1.0, hi}))
    for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.lambda);
  return out;
}

}  // namespace

TEST_CASE("meshes resolve every segment and respect breakpoints") {
  auto p = build_paper_defect_medium(8);
  auto mesh = build_mesh(p, 4, 1.0);
  CHECK(mesh.elements() >= 4 * p.size());
  std::vector<int> per(p.size(), 0);
  for (auto s : mesh.element_segment) ++per[s];
  for (int k : per) CHECK(k >= 4);
  auto contains = [&](double x) {
    for (double v : mesh.nodes)
      if (v == x) return true;
    return false;
  };
  CHECK(contains(0.25));
  CHECK(contains(0.75));
  for (std::size_t e = 0; e < mesh.elements(); ++e) {
    CHECK_FALSE((mesh.nodes[e] < 0.25 && mesh.nodes[e + 1] > 0.25));
    CHECK_FALSE((mesh.nodes[e] < 0.75 && mesh.nodes[e + 1] > 0.75));
  }
  auto def = build_default_mesh(p);
  for (std::size_t e = 0; e < def.elements(); ++e) CHECK(def.nodes[e + 1] - def.nodes[e] <= 1.0 / 1024 + 1e-15);
}

TEST_CASE("mesh node cap") {
  auto p = build_paper_defect_medium(8);
  CHECK_THROWS_AS(build_mesh(p, 4, 1e-6, 1000), MeshTooLarge);
  CHECK_THROWS_AS(build_spectral_mesh(p, 1e9, {}, 0, 0.1, 10000), MeshTooLarge);
  CHECK_THROWS_AS(build_mesh(p, 0, 0.1), InvalidArgument);
}

TEST_CASE("homogeneous string with P1 elements") {
  auto d = first_fem(string(), 0, BoundaryKind::Dirichlet, 400.0);
  REQUIRE(d.size() == 6);
  for (int k = 1; k <= 6; ++k) {
    const double exact = k * k * pi * pi;
    CHECK(d[k - 1] >= exact);
    CHECK(d[k - 1] == doctest::Approx(exact).epsilon(1e-4));
  }
  auto per = first_fem(string(), 0, BoundaryKind::Periodic, 200.0);
  REQUIRE(per.size() == 5);
  CHECK(std::abs(per[0]) < 1e-9);
  CHECK(per[1] == doctest::Approx(4 * pi * pi).epsilon(1e-5));
  CHECK(per[2] == doctest::Approx(4 * pi * pi).epsilon(1e-5));
  auto neu = first_fem(string(), 0, BoundaryKind::Neumann, 50.0);
  REQUIRE(neu.size() == 3);
  CHECK(std::abs(neu[0]) < 1e-9);
  auto anti = first_fem(string(), 0, BoundaryKind::Antiperiodic, 100.0);
  REQUIRE(anti.size() == 4);
  CHECK(anti[0] == doctest::Approx(pi * pi).epsilon(1e-5));
}

TEST_CASE("inertia count matches the transfer count") {
  auto p = build_paper_defect_medium(8);
  for (auto bc : {BoundaryKind::Dirichlet, BoundaryKind::Neumann, BoundaryKind::Periodic}) {
    AssemblyOptions ao;
    ao.bc = bc;
    auto pencil = assemble(build_default_mesh(p), p, ao);
    CHECK(count_below(pencil, 120.0) == count_below(p, 120.0, bc));
  }
}

TEST_CASE("P1 eigenvalues converge at second order on the n=128 defect medium") {
  auto p = build_paper_defect_medium(128);
  auto exact = eigenvalues_in(p, BoundaryKind::Dirichlet, {0.0, 60.0});
  REQUIRE(exact.size() >= 10);
  const double hi = exact[9].lambda * 1.001 + 1e-6;
  std::vector<double> err;
  for (int r : {0, 1}) {
    auto f = first_fem(p, r, BoundaryKind::Dirichlet, hi);
    REQUIRE(f.size() >= 10);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      CHECK(f[i] >= exact[i].lambda * (1 - 1e-12));
      worst = std::max(worst, std::abs(f[i] / exact[i].lambda - 1));
    }
    err.push_back(worst);
  }
  CHECK(err[0] <= 1e-3);
  CHECK(err[0] / err[1] >= 3.5);
  CHECK(err[0] / err[1] <= 4.5);
}

TEST_CASE("FEM eigenvector agrees with the transfer eigenfunction") {
  auto p = build_paper_defect_medium(8);
  auto pencil = assemble(build_default_mesh(p, 1), p);
  auto ev = eigenvalues_in_window(pencil, {70.0, 80.0});
  REQUIRE(ev.size() == 1);
  auto fem = eigenvector(pencil, ev[0].lambda);
  EigenfunctionOptions eo;
  eo.samples_per_segment = 64;
  auto tr = eigenfunction(p, BoundaryKind::Dirichlet, eigenvalues_in(p, BoundaryKind::Dirichlet, {70.0, 80.0})[0].lambda, eo);
  // compare at transfer sample points by linear interpolation of the FEM solution
  std::vector<double> u(tr.grid.size());
  double dot = 0.0;
  for (std::size_t i = 0; i < tr.grid.size(); ++i) {
    const double x = tr.grid[i];
    auto it = std::upper_bound(fem.grid.begin(), fem.grid.end(), x);
    std::size_t k = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - fem.grid.begin(), 1), fem.grid.size() - 1);
    const double t = (x - fem.grid[k - 1]) / (fem.grid[k] - fem.grid[k - 1]);
    u[i] = (1 - t) * fem.values[k - 1] + t * fem.values[k];
    dot += u[i] * tr.values[i];
  }
  const double sign = dot < 0.0 ? -1.0 : 1.0;
  double diff2 = 0.0;
  for (std::size_t i = 1; i < tr.grid.size(); ++i) {
    const double d0 = sign * u[i - 1] - tr.values[i - 1], d1 = sign * u[i] - tr.values[i];
    diff2 += 0.5 * (tr.grid[i] - tr.grid[i - 1]) * (d0 * d0 + d1 * d1);
  }
  CHECK(std::sqrt(diff2) < 1e-2);
  CHECK(fem.solver == SolverKind::Fem);
  CHECK(rayleigh_quotient(pencil, dof_values(pencil, fem)) == doctest::Approx(ev[0].lambda).epsilon(1e-9));
}

TEST_CASE("periodic ring eigenvectors for a double eigenvalue") {
  auto p = string();
  AssemblyOptions ao;
  ao.bc = BoundaryKind::Periodic;
  auto pencil = assemble(build_default_mesh(p), p, ao);
  auto ev = eigenvalues_in_window(pencil, {30.0, 50.0});
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].multiplicity == 2);
  auto sol = eigenvector(pencil, ev[0].lambda);
  CHECK(rayleigh_quotient(pencil, dof_values(pencil, sol)) == doctest::Approx(ev[0].lambda).epsilon(1e-8));
}

TEST_CASE("matrix dump format") {
  SymTridiagonal a(3, true);
  a.add(0, 0, 2.0);
  a.add(0, 1, -1.0);
  a.add(0, 2, 0.5);
  std::ostringstream os;
  dump_matrix(os, a);
  const std::string s = os.str();
  CHECK(s.rfind("symmetric banded n=3 bw=2\n", 0) == 0);
  CHECK(s.find("0 0 2\n") != std::string::npos);
  CHECK(s.find("0 1 -1\n") != std::string::npos);
  CHECK(s.find("0 2 0.5\n") != std::string::npos);
  CHECK(a.multiply({1, 1, 1})[0] == doctest::Approx(1.5));
}

TEST_CASE("spectral mesh keeps band-2 modes accurate") {
  auto p = build_paper_defect_medium(32);
  auto exact = eigenvalues_in(p, BoundaryKind::Dirichlet, {60.0, 160.0});
  REQUIRE_FALSE(exact.empty());
  auto mesh = build_spectral_mesh(p, 160.0);
  CHECK(mesh.elements() >= build_default_mesh(p).elements());
  auto pencil = assemble(mesh, p);
  auto f = eigenvalues_in_window(pencil, {60.0, 160.0 * 1.01});
  REQUIRE(f.size() >= exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) CHECK(std::abs(f[i].lambda / exact[i].lambda - 1) < 1e-3);
}

TEST_CASE("constrained limit operator reproduces the theta=0 branch") {
  CellSpec cell;
  auto ev = limit_operator_spectrum(1, cell, 3, 1.0 / 512);
  auto ref = bloch_eigenvalues(DispersionKind::limit(0.25, 0.75), 0.0, 3);
  REQUIRE(ev.size() == 3);
  CHECK(std::abs(ev[0]) < 1e-8);
  for (int i = 1; i < 3; ++i) CHECK(ev[i] == doctest::Approx(ref.eigenvalues[i]).epsilon(1e-3));
}
