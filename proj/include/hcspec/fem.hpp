// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "hcspec/media.hpp"
#include "hcspec/types.hpp"

namespace hcs {

struct Mesh {
  std::vector<double> nodes;
  std::vector<std::size_t> element_segment;

  std::size_t elements() const { return element_segment.size(); }
};

constexpr std::size_t kDefaultMaxNodes = 8'000'000;

Mesh build_mesh(const CoefficientProfile& profile, int min_elements_per_segment, double target_h,
                std::size_t max_nodes = kDefaultMaxNodes);
// Default resolution used by the cross-solver checks.
Mesh build_default_mesh(const CoefficientProfile& profile, int refinements = 0);
// Default mesh refined further so that every segment carries at most `phase_per_element`
// radians of the local wavenumber at lambda_max (P1 error ~ phase²/12).
Mesh build_spectral_mesh(const CoefficientProfile& profile, double lambda_max, const WaveParams& wave = {},
                         int refinements = 0, double phase_per_element = 0.1,
                         std::size_t max_nodes = kDefaultMaxNodes);

// Symmetric tridiagonal matrix with an optional (0, n-1) corner entry.
class SymTridiagonal {
 public:
  SymTridiagonal() = default;
  SymTridiagonal(std::size_t n, bool periodic);

  std::size_t size() const { return diag.size(); }
  bool periodic() const { return periodic_; }
  void add(std::size_t i, std::size_t j, double v);
  std::vector<double> multiply(const std::vector<double>& x) const;
  double max_abs() const;
  int bandwidth() const { return periodic_ && size() > 2 ? 2 : 1; }

  std::vector<double> diag;
  std::vector<double> off;  // (i, i+1)
  double corner = 0.0;      // (0, n-1)

 private:
  bool periodic_ = false;
};

enum class MassKind { Consistent, Lumped };

struct AssemblyOptions {
  WaveParams wave;
  BoundaryKind bc = BoundaryKind::Dirichlet;
  MassKind mass = MassKind::Consistent;
};

struct Pencil {
  SymTridiagonal K, M;
  // Split of K for accurate inertia: K = (chain stiffness from k_left/k_right) + K0.
  SymTridiagonal K0;
  std::vector<double> k_left, k_right;  // stiffness of the element on each side of a dof
  BoundaryKind bc = BoundaryKind::Dirichlet;
  std::vector<std::size_t> dof_node;   // mesh node of each dof
  std::vector<double> nodes;           // mesh nodes
  std::vector<double> element_q;       // effective q per element, for flux recovery

  std::size_t dofs() const { return K.size(); }
};

Pencil assemble(const Mesh& mesh, const CoefficientProfile& profile, const AssemblyOptions& opts = {});

struct InertiaStats {
  std::size_t perturbed_pivots = 0;
};

// Eigenvalues of (K, M) strictly below lambda, from the inertia of K − λM.
std::size_t count_below(const Pencil& pencil, double lambda, InertiaStats* stats = nullptr);

std::vector<EigenValue> eigenvalues_in_window(const Pencil& pencil, Window window,
                                              const BisectionOptions& opts = {});

EigenSolution eigenvector(const Pencil& pencil, double lambda, int max_iterations = 50);

std::vector<double> dof_values(const Pencil& pencil, const EigenSolution& sol);
double rayleigh_quotient(const Pencil& pencil, const std::vector<double>& x);

// Constrained operator on n cells with periodic bc: functions constant on each stiff component.
Pencil assemble_limit_operator(int n, const CellSpec& cell, double mesh_h);
std::vector<double> limit_operator_spectrum(int n, const CellSpec& cell, int count, double mesh_h);

void dump_matrix(std::ostream& os, const SymTridiagonal& a);

}  // namespace hcs
