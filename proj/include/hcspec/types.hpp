// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hcspec/media.hpp"

namespace hcs {

enum class BoundaryKind { Dirichlet, Neumann, Periodic, Antiperiodic };
enum class Polarization { TE, TM };
enum class SolverKind { Transfer, Fem };

std::string to_string(BoundaryKind bc);
std::string to_string(Polarization p);
std::string to_string(SolverKind s);
BoundaryKind boundary_from_string(const std::string& s);
Polarization polarization_from_string(const std::string& s);

struct WaveParams {
  double kappa = 0.0;
  Polarization polarization = Polarization::TE;
};

// Coefficients of -(q u')' + r u = lambda m u after the kappa offset.
struct EffectiveCoefficients {
  double q, r, m;
};
EffectiveCoefficients effective(const Segment& seg, const WaveParams& wave);

struct Window {
  double lo, hi;
};

struct EigenValue {
  double lambda = 0.0;
  int multiplicity = 1;
  double residual = 0.0;
};

struct EigenSolution {
  double lambda = 0.0;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> flux;
  BoundaryKind bc = BoundaryKind::Dirichlet;
  double residual = 0.0;
  SolverKind solver = SolverKind::Transfer;
  int multiplicity = 1;
  double match_defect = 0.0;  // angle mismatch of the two shots at the join
};

struct BisectionOptions {
  double rtol = 1e-10;
  double atol = 1e-13;
  std::size_t max_count = 10'000;
  unsigned threads = 1;
};

struct Bracket {
  double lo, hi;
  int multiplicity;
};

// Isolates eigenvalues in [lo, hi) from a monotone count of eigenvalues strictly below λ.
std::vector<Bracket> bisect_spectrum(const std::function<std::size_t(double)>& count_below, Window window,
                                     const BisectionOptions& opts);

unsigned default_threads();

double trapezoid_norm2(const std::vector<double>& x, const std::vector<double>& u);

}  // namespace hcs
