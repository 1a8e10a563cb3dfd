// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace hcs {

double limit_lhs(double lambda, double alpha, double beta);
double finite_eps_lhs(double lambda, double eps, double alpha, double beta);
double kappa_limit_lhs(double lambda, double kappa, double alpha, double beta);

struct DispersionKind {
  enum class Type { Limit, FiniteEps, KappaLimit };
  Type type = Type::Limit;
  double eps = 0.0;
  double kappa = 0.0;
  double alpha = 0.25;
  double beta = 0.75;

  static DispersionKind limit(double alpha, double beta);
  static DispersionKind finite_eps(double eps, double alpha, double beta);
  static DispersionKind kappa_limit(double kappa, double alpha, double beta);

  void validate() const;
  double lhs(double lambda) const;
  // Same function of t = sqrt(lambda); total for t > 0.
  double lhs_t(double t) const;
};

struct Band {
  double lo, hi;
};

struct Gap {
  double lo, hi;
  bool degenerate = false;  // bands touch: LHS reaches ±1 tangentially
};

struct BandStructure {
  std::vector<Band> bands;
  std::vector<Gap> gaps;
  double lambda_max = 0.0;
  double edge_tolerance = 0.0;
  std::size_t evaluations = 0;

  // True when the first gap starts at lambda = 0 (KappaLimit with kappa > 0).
  bool zero_frequency_gap() const { return !gaps.empty() && gaps.front().lo == 0.0; }
};

struct ScanOptions {
  std::size_t budget = 1'000'000;
  // Extrema of |LHS|-1 closer than this to zero get a refined search.
  double touch_tolerance = 1e-3;
  std::size_t min_grid = 4000;
};

BandStructure band_structure(const DispersionKind& kind, double lambda_max, const ScanOptions& opts = {});

struct BlochBranch {
  double theta = 0.0;
  std::vector<double> eigenvalues;
};

// First `count` roots of LHS(lambda) = cos(2πθ); θ=1 is identified with 0.
BlochBranch bloch_eigenvalues(const DispersionKind& kind, double theta, int count,
                              double lambda_cap = 1e8, const ScanOptions& opts = {});
// Roots for several θ sharing one band scan.
std::vector<BlochBranch> bloch_eigenvalues(const DispersionKind& kind, const std::vector<double>& thetas,
                                           int count, double lambda_cap = 1e8, const ScanOptions& opts = {});

struct CurvePoint {
  double t, lhs;
};
// Uniform samples of (t, LHS(t²)) on [0, t_max].
std::vector<CurvePoint> lhs_curve(const DispersionKind& kind, double t_max, std::size_t points);

}  // namespace hcs
