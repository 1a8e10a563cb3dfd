#include "doctest.h"

#include <cmath>
#include <map>
#include <numbers>

#include "hcspec/defect.hpp"
#include "hcspec/errors.hpp"
#include "hcspec/transfer.hpp"

using namespace hcs;
using std::numbers::pi;

namespace {

std::vector<DefectReport> trapped(int n, BoundaryKind bc, bool fit = true) {
  auto profile = build_paper_defect_medium(n);
  auto bands = band_structure(DispersionKind::finite_eps(1.0 / (4.0 * n), 0.25, 0.75), 1500.0);
  TrappedModeOptions o;
  o.n = n;
  o.fit_decay = fit;
  return find_trapped_modes(profile, bc, bands, DefectSpec{}, o);
}

EigenSolution synthetic(double rate, bool flat = false) {
  EigenSolution s;
  for (int i = 0; i <= 4000; ++i) {
    const double x = i / 4000.0;
    const double dist = x < 0.25 ? 0.25 - x : (x > 0.75 ? x - 0.75 : 0.0);
    s.grid.push_back(x);
    const double osc = std::abs(std::cos(2 * pi * 64 * x)) + 0.05;
    s.values.push_back(flat ? osc : std::exp(-rate * dist) * osc);
  }
  return s;
}

}  // namespace

TEST_CASE("asymptotic defect eigenvalues") {
  auto a = asymptotic_defect_eigenvalues(2.0, 0.5, 4);
  REQUIRE(a.size() == 4);
  for (int j = 1; j <= 4; ++j) CHECK(a[j - 1] == doctest::Approx(8 * pi * pi * j * j).epsilon(1e-14));
  CHECK(a[0] == doctest::Approx(78.9568).epsilon(1e-6));
  CHECK(a[3] == doctest::Approx(1263.3094).epsilon(1e-6));
  CHECK_THROWS_AS(asymptotic_defect_eigenvalues(0.0, 0.5, 2), InvalidArgument);
}

TEST_CASE("decay fit recovers a synthetic envelope") {
  auto fit = decay_rate(synthetic(10.0), DefectSpec{}, 0.0, 1.0 / 64);
  CHECK(fit.rate == doctest::Approx(10.0).epsilon(2e-2));
  CHECK(fit.fit_quality > 0.99);
  CHECK(fit.points >= 5);
  auto flat = decay_rate(synthetic(0.0, true), DefectSpec{}, 0.0, 1.0 / 64);
  CHECK(std::abs(flat.rate) < 1e-3);
  CHECK(flat.fit_quality < 0.5);
}

TEST_CASE("decay fit needs enough envelope samples") {
  EigenSolution s;
  s.grid = {0.0, 0.1, 0.5, 0.9, 1.0};
  s.values = {0.1, 0.2, 1.0, 0.2, 0.1};
  CHECK_THROWS_AS(decay_rate(s, DefectSpec{}, 0.0, 0.05), InsufficientSamples);
  CHECK_THROWS_AS(decay_rate(s, DefectSpec{}, -1.0), InvalidArgument);
}

TEST_CASE("host period of the defect medium") {
  CHECK(host_period(build_paper_defect_medium(8)) == doctest::Approx(1.0 / 32).epsilon(1e-12));
}

TEST_CASE("gap occupancy n=128") {
  for (auto bc : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
    auto reps = trapped(128, bc, false);
    std::map<int, int> per;
    for (const auto& r : reps) ++per[r.gap_index];
    CHECK(per[1] == 0);
    CHECK(per[2] == 1);
    CHECK(per[3] == 1);
    CHECK(per[4] == 0);
    CHECK(per[5] == 1);
    CHECK(per[6] == 1);
    for (const auto& r : reps) {
      CHECK(r.trapped_lambda > r.gap_lo);
      CHECK(r.trapped_lambda < r.gap_hi);
      REQUIRE(r.asymptotic_lambda.has_value());
      CHECK(std::abs(r.relative_offset) < 1e-2);
      CHECK(r.relative_offset < 0.0);
    }
  }
}

TEST_CASE("offsets shrink as the contrast grows") {
  double prev = 1.0;
  for (int n : {32, 64, 128, 256}) {
    auto reps = trapped(n, BoundaryKind::Dirichlet, false);
    double worst = 0.0;
    for (const auto& r : reps)
      if (r.gap_index == 2) worst = std::abs(r.relative_offset);
    CHECK(worst > 0.0);
    CHECK(worst < prev);
    prev = worst;
  }
}

TEST_CASE("mode j has j sign changes inside the defect") {
  auto profile = build_paper_defect_medium(128);
  auto reps = trapped(128, BoundaryKind::Periodic, false);
  REQUIRE(reps.size() == 4);
  EigenfunctionOptions eo;
  eo.samples_per_segment = 16;
  int j = 0;
  for (const auto& r : reps) {
    ++j;
    auto sol = eigenfunction(profile, BoundaryKind::Periodic, r.trapped_lambda, eo);
    CHECK(interior_sign_changes(sol, DefectSpec{}) == j);
  }
}

TEST_CASE("gap-5 decay rates grow with n") {
  double prev = 0.0;
  for (int n : {32, 64, 128, 256}) {
    auto reps = trapped(n, BoundaryKind::Periodic);
    const DefectReport* g5 = nullptr;
    for (const auto& r : reps)
      if (r.gap_index == 5) g5 = &r;
    REQUIRE(g5 != nullptr);
    CHECK(g5->decay_rate > prev);
    CHECK(g5->fit_quality > 0.95);
    prev = g5->decay_rate;
  }
}

TEST_CASE("oblique incidence labels the zero-frequency gap 0") {
  auto profile = build_paper_defect_medium(16);
  auto bands = band_structure(DispersionKind::kappa_limit(1.0, 0.25, 0.75), 200.0);
  REQUIRE(bands.zero_frequency_gap());
  TrappedModeOptions o;
  o.fit_decay = false;
  o.wave.kappa = 1.0;
  auto reps = find_trapped_modes(profile, BoundaryKind::Dirichlet, bands, DefectSpec{}, o);
  for (const auto& r : reps) CHECK(r.gap_index >= 0);
  o.collar = 0.7;
  CHECK_THROWS_AS(find_trapped_modes(profile, BoundaryKind::Dirichlet, bands, DefectSpec{}, o), InvalidArgument);
}
