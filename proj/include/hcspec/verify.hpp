// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hcspec/media.hpp"

namespace hcs {

// max |finite_eps_lhs(λ, ε) − half-trace of the rescaled cell at ε²λ| over the grids.
double dispersion_vs_monodromy(double alpha, double beta, const std::vector<double>& eps_list,
                               const std::vector<double>& lambda_grid);

// θ-quasiperiodic P1 functions on Q = [0, 1) with `elements` uniform elements. Dof j is
// the value at node j; the value at x = 1 is exp(2πiθ)·u_0.
struct QuasiperiodicCellSpace {
  double theta = 0.0;
  double alpha = 0.25, beta = 0.75;
  int elements = 256;

  int dofs() const { return elements; }
  double h() const { return 1.0 / elements; }
  std::complex<double> phase() const;
  bool stiff_element(int e) const;  // element lies in Q1 = [0, α) ∪ (β, 1)
};

struct PoincareOptions {
  bool h1_complement = false;  // complement in the plain H¹ product instead of |||·|||
};

struct PoincareTable {
  double alpha = 0.25, beta = 0.75;
  std::vector<double> thetas;
  std::vector<double> hs;
  std::vector<std::vector<double>> c;  // c[h index][θ index]
  std::vector<double> min_c;           // min over θ per h
  bool h1_complement = false;
};

// c(θ, h) = min over w ∈ V⊥(θ) of ∫_{Q₁}|w'|² / |||w|||².
double poincare_constant(double alpha, double beta, double theta, double mesh_h, const PoincareOptions& opts = {});
PoincareTable poincare_uniform_constant(double alpha, double beta, const std::vector<double>& theta_grid,
                                        const std::vector<double>& mesh_h_list, const PoincareOptions& opts = {});

// θ grids used by the property suite: 33 points and the refined 67-point grid.
std::vector<double> poincare_theta_grid();
std::vector<double> poincare_theta_grid_refined();

struct ClassicalPoincareReport {
  double worst_ratio = 0.0;
  double c_p = 0.0;              // 2/|Q₁|²
  double sharp_constant = 0.0;   // max of the ratio over the discrete space
  double constant_ratio = 0.0;   // ratio of u ≡ 1
  int trials = 0;
  std::uint64_t seed = 0;
  bool passed = false;
};

// max of ∫_Q|u|² / (|∫_{Q₁}u|² + ∫_Q|u'|²) over random complex P1 functions.
ClassicalPoincareReport classical_poincare_check(double alpha, double beta, double mesh_h, int trials,
                                                 std::uint64_t seed = 20240607);

struct ContinuityReport {
  std::vector<int> grid_sizes;
  std::vector<double> moduli;
  std::vector<double> ratios;      // moduli[i+1]/moduli[i]
  double k1_exponent = 0.0;        // fitted p in λ₁(1/G) − λ₁(0) ∝ G^{−p}
  double symmetry_error = 0.0;     // max |λ_k(θ) − λ_k(1−θ)|
  bool passed = false;             // every ratio ≤ 0.6
};

ContinuityReport lambda_continuity(double alpha, double beta, int k_max, const std::vector<int>& theta_grid_sizes);

struct NqReport {
  std::vector<int> n_list;
  std::vector<double> discrepancy;  // max relative pair discrepancy per n
  double worst = 0.0;
};

NqReport bloch_vs_nq(const std::vector<int>& n_list, double alpha, double beta, int count,
                     double mesh_h = 1.0 / 512.0);

}  // namespace hcs
