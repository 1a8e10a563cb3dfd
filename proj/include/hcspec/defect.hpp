// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcspec/dispersion.hpp"
#include "hcspec/media.hpp"
#include "hcspec/types.hpp"

namespace hcs {

struct DefectReport {
  int gap_index = 1;  // 1-based over the reference gaps; 0 is the zero-frequency gap at kappa > 0
  double gap_lo = 0.0, gap_hi = 0.0;
  double trapped_lambda = 0.0;
  std::optional<double> asymptotic_lambda;
  double relative_offset = 0.0;  // NaN when unpaired
  double decay_rate = 0.0;
  double fit_quality = 0.0;
  BoundaryKind bc = BoundaryKind::Dirichlet;
  int n = 0;
  std::string warning;
};

// {p_d·π²·j²/|I_d|² : j = 1..j_max}
std::vector<double> asymptotic_defect_eigenvalues(double p_d, double i_d_length, int j_max);

struct TrappedModeOptions {
  double collar = 0.02;  // fraction of the gap width dropped at each edge
  double skip = 0.0;     // near-field collar for the decay fit
  bool fit_decay = true;
  int n = 0;             // contrast label copied into the reports
  WaveParams wave;
  BisectionOptions bisection;
};

std::vector<DefectReport> find_trapped_modes(const CoefficientProfile& profile, BoundaryKind bc,
                                             const BandStructure& reference_bands, const DefectSpec& defect,
                                             const TrappedModeOptions& opts = {});

struct DecayFit {
  double rate = 0.0;
  double fit_quality = 0.0;
  std::size_t points = 0;
};

// Log-linear fit of the per-window maxima of |u| against dist(x, I_d). The window is the
// envelope period; window <= 0 uses 1/64 of the largest distance.
DecayFit decay_rate(const EigenSolution& solution, const DefectSpec& defect, double skip, double window = 0.0);

// Twice the median length of the segments outside the defect: one period of the host.
double host_period(const CoefficientProfile& profile);

// Sign changes of u strictly inside I_d, ignoring samples below tol·max|u|.
int interior_sign_changes(const EigenSolution& solution, const DefectSpec& defect, double tol = 1e-8);

}  // namespace hcs
