// SPDX-License-Identifier: Apache-2.0
#include "hcspec/fem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include "hcspec/errors.hpp"

namespace hcs {

namespace {

Mesh mesh_from_counts(const CoefficientProfile& profile, const std::vector<std::size_t>& per) {
  const auto& xs = profile.breakpoints();
  Mesh mesh;
  std::size_t total = 1;
  for (auto k : per) total += k;
  mesh.nodes.reserve(total);
  mesh.element_segment.reserve(total - 1);
  mesh.nodes.push_back(xs[0]);
  for (std::size_t s = 0; s < profile.size(); ++s) {
    const double a = xs[s], b = xs[s + 1];
    for (std::size_t k = 1; k <= per[s]; ++k) {
      mesh.nodes.push_back(k == per[s] ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(per[s]));
      mesh.element_segment.push_back(s);
    }
  }
  return mesh;
}

}  // namespace

Mesh build_mesh(const CoefficientProfile& profile, int min_elements_per_segment, double target_h,
                std::size_t max_nodes) {
  if (min_elements_per_segment < 1) throw InvalidArgument("min_elements_per_segment must be at least 1");
  if (!(target_h > 0.0)) throw InvalidArgument("target_h must be positive");
  std::size_t total = 1;
  std::vector<std::size_t> per(profile.size());
  for (std::size_t s = 0; s < profile.size(); ++s) {
    double want = std::ceil(profile.segment(s).length / target_h);
    if (want > static_cast<double>(max_nodes)) throw MeshTooLarge("mesh exceeds the node cap");
    per[s] = std::max<std::size_t>(min_elements_per_segment, static_cast<std::size_t>(want));
    total += per[s];
    if (total > max_nodes) throw MeshTooLarge("mesh exceeds the node cap");
  }
  return mesh_from_counts(profile, per);
}

Mesh build_default_mesh(const CoefficientProfile& profile, int refinements) {
  const int f = 1 << refinements;
  return build_mesh(profile, 8 * f, 1.0 / (1024.0 * f));
}

Mesh build_spectral_mesh(const CoefficientProfile& profile, double lambda_max, const WaveParams& wave,
                         int refinements, double phase_per_element, std::size_t max_nodes) {
  if (!(phase_per_element > 0.0)) throw InvalidArgument("phase_per_element must be positive");
  const Mesh base = build_default_mesh(profile, refinements);
  std::vector<std::size_t> per(profile.size(), 0);
  for (auto s : base.element_segment) ++per[s];
  const double f = static_cast<double>(1 << refinements);
  std::size_t total = 1;
  for (std::size_t s = 0; s < profile.size(); ++s) {
    const auto& seg = profile.segment(s);
    const auto c = effective(seg, wave);
    const double omega = std::sqrt(std::max(0.0, lambda_max * c.m - c.r) / c.q);
    const double want = std::ceil(omega * seg.length * f / phase_per_element);
    if (want > static_cast<double>(max_nodes)) throw MeshTooLarge("mesh exceeds the node cap");
    per[s] = std::max(per[s], static_cast<std::size_t>(want));
    total += per[s];
    if (total > max_nodes) throw MeshTooLarge("mesh exceeds the node cap");
  }
  return mesh_from_counts(profile, per);
}

SymTridiagonal::SymTridiagonal(std::size_t n, bool periodic)
    : diag(n, 0.0), off(n > 0 ? n - 1 : 0, 0.0), periodic_(periodic) {}

void SymTridiagonal::add(std::size_t i, std::size_t j, double v) {
  const std::size_t n = size();
  if (i == j) {
    diag[i] += v;
    return;
  }
  std::size_t lo = std::min(i, j), hi = std::max(i, j);
  if (hi == lo + 1) {
    off[lo] += v;  // with two ring dofs the corner coincides with this entry
    return;
  }
  if (periodic_ && lo == 0 && hi == n - 1) {
    corner += v;
    return;
  }
  throw InvalidArgument("entry outside the tridiagonal pattern");
}

std::vector<double> SymTridiagonal::multiply(const std::vector<double>& x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < n) s += off[i] * x[i + 1];
    y[i] = s;
  }
  if (periodic_ && n > 2) {
    y[0] += corner * x[n - 1];
    y[n - 1] += corner * x[0];
  }
  return y;
}

double SymTridiagonal::max_abs() const {
  double m = std::fabs(corner);
  for (double v : diag) m = std::max(m, std::fabs(v));
  for (double v : off) m = std::max(m, std::fabs(v));
  return m;
}

Pencil assemble(const Mesh& mesh, const CoefficientProfile& profile, const AssemblyOptions& opts) {
  const std::size_t nn = mesh.nodes.size();
  if (nn < 2) throw InvalidArgument("mesh needs at least one element");
  const std::size_t last = nn - 1;
  // Node → (dof, sign); npos for eliminated Dirichlet nodes.
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dof(nn, none);
  std::vector<double> sign(nn, 1.0);
  Pencil p;
  p.bc = opts.bc;
  p.nodes = mesh.nodes;
  bool ring = false;
  switch (opts.bc) {
    case BoundaryKind::Dirichlet:
      if (nn < 3) throw InvalidArgument("Dirichlet mesh needs an interior node");
      for (std::size_t i = 1; i < last; ++i) dof[i] = i - 1;
      break;
    case BoundaryKind::Neumann:
      for (std::size_t i = 0; i < nn; ++i) dof[i] = i;
      break;
    case BoundaryKind::Periodic:
    case BoundaryKind::Antiperiodic:
      ring = true;
      for (std::size_t i = 0; i < last; ++i) dof[i] = i;
      dof[last] = 0;
      if (opts.bc == BoundaryKind::Antiperiodic) sign[last] = -1.0;
      break;
  }
  std::size_t ndof = 0;
  for (std::size_t i = 0; i < nn; ++i)
    if (dof[i] != none && (i != last || !ring)) {
      p.dof_node.push_back(i);
      ++ndof;
    }
  p.K = SymTridiagonal(ndof, ring);
  p.M = SymTridiagonal(ndof, ring);
  p.K0 = SymTridiagonal(ndof, ring);
  p.k_left.assign(ndof, 0.0);
  p.k_right.assign(ndof, 0.0);
  p.element_q.resize(mesh.elements());
  for (std::size_t e = 0; e < mesh.elements(); ++e) {
    const auto c = effective(profile.segment(mesh.element_segment[e]), opts.wave);
    const double h = mesh.nodes[e + 1] - mesh.nodes[e];
    p.element_q[e] = c.q;
    const double k11 = c.q / h + c.r * h / 3.0, k12 = -c.q / h + c.r * h / 6.0;
    double m11 = c.m * h / 3.0, m12 = c.m * h / 6.0;
    if (opts.mass == MassKind::Lumped) {
      m11 = c.m * h / 2.0;
      m12 = 0.0;
    }
    const std::size_t i = e, j = e + 1;
    const double kq = c.q / h, z11 = c.r * h / 3.0, z12 = c.r * h / 6.0;
    if (dof[i] != none) {
      p.K.add(dof[i], dof[i], k11);
      p.M.add(dof[i], dof[i], m11);
      p.K0.add(dof[i], dof[i], z11);
      p.k_right[dof[i]] += kq;
    }
    if (dof[j] != none) {
      p.K.add(dof[j], dof[j], k11);
      p.M.add(dof[j], dof[j], m11);
      p.K0.add(dof[j], dof[j], z11);
      p.k_left[dof[j]] += kq;
    }
    if (dof[i] != none && dof[j] != none) {
      const double sg = sign[i] * sign[j];
      if (dof[i] == dof[j]) {
        p.K.add(dof[i], dof[i], 2.0 * sg * k12);
        p.M.add(dof[i], dof[i], 2.0 * sg * m12);
        p.K0.add(dof[i], dof[i], 2.0 * sg * z12);
      } else {
        p.K.add(dof[i], dof[j], sg * k12);
        p.M.add(dof[i], dof[j], sg * m12);
        p.K0.add(dof[i], dof[j], sg * z12);
      }
    }
  }
  return p;
}

namespace {

// LDLᵀ of a chain of dofs [g0, g1] of A = K − λM without pivoting. Pivots are written
// as p_i = k_right_i + d_i; the excess d_i obeys a recurrence free of the large stiffness
// cancellations, keeping tiny eigenvalues of stiff chains accurate.
struct Chain {
  std::size_t g0 = 0;
  std::vector<double> e, piv;

  std::vector<double> solve(const std::vector<double>& v) const {
    const std::size_t m = piv.size();
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = i == 0 ? v[0] : v[i] - (e[i - 1] / piv[i - 1]) * z[i - 1];
    std::vector<double> x(m);
    for (std::size_t i = m; i-- > 0;) {
      x[i] = z[i] / piv[i];
      if (i + 1 < m) x[i] -= (e[i] / piv[i]) * x[i + 1];
    }
    return x;
  }

  // (T⁻¹)_{first,first}, (T⁻¹)_{first,last}, (T⁻¹)_{last,last}
  std::array<double, 3> end_inverse() const {
    const std::size_t m = piv.size();
    std::vector<double> u(m, 0.0);
    u[0] = 1.0;
    auto x = solve(u);
    u[0] = 0.0;
    u[m - 1] = 1.0;
    auto y = solve(u);
    return {x[0], x[m - 1], y[m - 1]};
  }
};

struct Factorization {
  std::vector<Chain> chains;
  std::size_t negatives = 0;
  std::size_t perturbed = 0;

  std::vector<double> solve(const std::vector<double>& r) const { return chains.front().solve(r); }
};

Factorization factor(const Pencil& p, double lambda) {
  Factorization f;
  const auto& K = p.K;
  const auto& M = p.M;
  const auto& K0 = p.K0;
  const std::size_t n = K.size();
  const double tiny = 64.0 * std::numeric_limits<double>::epsilon() * std::max(K.max_abs(), 1e-300);
  auto fix = [&](double v) {
    if (v == 0.0 || !std::isfinite(v)) {
      ++f.perturbed;
      return tiny;
    }
    return v;
  };
  auto a = [&](std::size_t i) { return K.diag[i] - lambda * M.diag[i]; };
  auto chain = [&](std::size_t g0, std::size_t g1) {
    Chain c;
    c.g0 = g0;
    const std::size_t m = g1 - g0 + 1;
    c.e.resize(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) c.e[i] = K.off[g0 + i] - lambda * M.off[g0 + i];
    c.piv.resize(m);
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t g = g0 + i;
      const double zd = K0.diag[g] - lambda * M.diag[g];
      if (i == 0) {
        d = p.k_left[g] + zd;
      } else {
        const double k = p.k_left[g];
        const double w = K0.off[g - 1] - lambda * M.off[g - 1];
        d = zd + (k * d + 2.0 * k * w - w * w) / c.piv[i - 1];
      }
      const double pv = p.k_right[g] + d;
      c.piv[i] = fix(pv);
      if (c.piv[i] != pv) d = c.piv[i] - p.k_right[g];
      if (c.piv[i] < 0.0) ++f.negatives;
    }
    return c;
  };

  if (!K.periodic()) {
    if (n > 0) f.chains.push_back(chain(0, n - 1));
    return f;
  }
  if (n < 8) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      dense(ii, ii) += a(i);
      if (i + 1 < n) {
        dense(ii, ii + 1) += K.off[i] - lambda * M.off[i];
        dense(ii + 1, ii) = dense(ii, ii + 1);
      }
    }
    if (n > 2) {
      const auto last = static_cast<Eigen::Index>(n - 1);
      dense(0, last) += K.corner - lambda * M.corner;
      dense(last, 0) = dense(0, last);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) < 0.0) ++f.negatives;
    return f;
  }
  // Ring: border dofs 0 and j. A single border dof leaves an inner chain that shares
  // every double eigenvalue of the ring; two borders at an irrational-ish split do not.
  const std::size_t j = std::clamp<std::size_t>(static_cast<std::size_t>(0.381966 * static_cast<double>(n)), 2, n - 2);
  const Chain c1 = chain(1, j - 1), c2 = chain(j + 1, n - 1);
  const auto i1 = c1.end_inverse(), i2 = c2.end_inverse();
  const double b01 = K.off[0] - lambda * M.off[0];            // 0 ↔ 1
  const double bj1 = K.off[j - 1] - lambda * M.off[j - 1];    // j ↔ j−1
  const double bj2 = K.off[j] - lambda * M.off[j];            // j ↔ j+1
  const double b02 = K.corner - lambda * M.corner;            // 0 ↔ n−1
  const double s00 = a(0) - b01 * b01 * i1[0] - b02 * b02 * i2[2];
  const double sjj = a(j) - bj1 * bj1 * i1[2] - bj2 * bj2 * i2[0];
  const double s0j = -b01 * bj1 * i1[1] - b02 * bj2 * i2[1];
  const double det = s00 * sjj - s0j * s0j;
  if (det < 0.0)
    f.negatives += 1;
  else if (s00 + sjj < 0.0)
    f.negatives += det > 0.0 ? 2 : 1;
  f.chains.push_back(c1);
  f.chains.push_back(c2);
  return f;
}

}  // namespace

std::size_t count_below(const Pencil& pencil, double lambda, InertiaStats* stats) {
  Factorization f = factor(pencil, lambda);
  if (stats) stats->perturbed_pivots += f.perturbed;
  return f.negatives;
}

std::vector<EigenValue> eigenvalues_in_window(const Pencil& pencil, Window window, const BisectionOptions& opts) {
  auto count = [&](double lam) { return count_below(pencil, lam); };
  std::vector<EigenValue> out;
  for (const auto& br : bisect_spectrum(count, window, opts)) {
    const double lam = 0.5 * (br.lo + br.hi) + 0.0;
    // Inertia near a multiple eigenvalue of a ring is decided by rounding; fuse such splits.
    if (!out.empty() && pencil.K.periodic() &&
        lam - out.back().lambda <= 1e-8 * std::max(std::fabs(lam), 1.0)) {
      auto& prev = out.back();
      const int m = prev.multiplicity + br.multiplicity;
      prev.lambda = (prev.lambda * prev.multiplicity + lam * br.multiplicity) / m;
      prev.multiplicity = m;
      continue;
    }
    out.push_back({lam, br.multiplicity, br.hi - br.lo});
  }
  return out;
}

namespace {

double m_inner(const SymTridiagonal& M, const std::vector<double>& x, const std::vector<double>& y) {
  auto my = M.multiply(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * my[i];
  return s;
}

}  // namespace

double rayleigh_quotient(const Pencil& pencil, const std::vector<double>& x) {
  return m_inner(pencil.K, x, x) / m_inner(pencil.M, x, x);
}

namespace {

double eigen_residual(const Pencil& pencil, const std::vector<double>& x) {
  const double rho = rayleigh_quotient(pencil, x);
  auto kx = pencil.K.multiply(x), mx = pencil.M.multiply(x);
  double r = 0.0, a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r += (kx[i] - rho * mx[i]) * (kx[i] - rho * mx[i]);
    a += kx[i] * kx[i];
    b += rho * rho * mx[i] * mx[i];
  }
  return std::sqrt(r / std::max({a, b, 1e-300}));
}

}  // namespace

EigenSolution eigenvector(const Pencil& pencil, double lambda, int max_iterations) {
  const std::size_t n = pencil.dofs();
  // A shift just below lambda scales a whole multiple eigenspace uniformly, so the
  // iterates settle instead of wandering inside it.
  const double shift = lambda - 1e-9 * std::max(std::fabs(lambda), 1e-6);
  Factorization f = factor(pencil, shift);
  // Ring pencils are solved with a pivoted sparse LU.
  const bool ring = pencil.K.periodic();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  if (ring) {
    std::vector<Eigen::Triplet<double>> trip;
    const auto& K = pencil.K;
    const auto& M = pencil.M;
    for (std::size_t i = 0; i < n; ++i) {
      const int ii = static_cast<int>(i);
      trip.emplace_back(ii, ii, K.diag[i] - shift * M.diag[i]);
      if (i + 1 < n) {
        const double v = K.off[i] - shift * M.off[i];
        trip.emplace_back(ii, ii + 1, v);
        trip.emplace_back(ii + 1, ii, v);
      }
    }
    const double c = K.corner - shift * M.corner;
    trip.emplace_back(0, static_cast<int>(n - 1), c);
    trip.emplace_back(static_cast<int>(n - 1), 0, c);
    Eigen::SparseMatrix<double> a(static_cast<int>(n), static_cast<int>(n));
    a.setFromTriplets(trip.begin(), trip.end());
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw NoConvergence("ring factorization failed");
  }
  auto ring_solve = [&](const std::vector<double>& r) {
    Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(r.size()));
    Eigen::VectorXd sol = lu.solve(rv);
    return std::vector<double>(sol.data(), sol.data() + sol.size());
  };
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
  double nx = std::sqrt(m_inner(pencil.M, x, x));
  for (auto& v : x) v /= nx;
  bool converged = false;
  for (int it = 0; it < max_iterations; ++it) {
    auto y = ring ? ring_solve(pencil.M.multiply(x)) : f.solve(pencil.M.multiply(x));
    double ny = std::sqrt(m_inner(pencil.M, y, y));
    if (!(ny > 0.0) || !std::isfinite(ny)) throw NoConvergence("inverse iteration broke down");
    for (auto& v : y) v /= ny;
    if (m_inner(pencil.M, y, x) < 0.0)
      for (auto& v : y) v = -v;
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = y[i] - x[i];
    double dn = std::sqrt(std::max(0.0, m_inner(pencil.M, diff, diff)));
    x = std::move(y);
    // Inside a nearly multiple eigenspace the iterate may keep turning slowly; an
    // eigen-residual at rounding level is accepted there.
    if (dn <= 1e-10 || (it >= 2 && eigen_residual(pencil, x) <= 1e-11)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NoConvergence("inverse iteration did not converge");

  EigenSolution sol;
  sol.lambda = lambda;
  sol.bc = pencil.bc;
  sol.solver = SolverKind::Fem;
  sol.grid = pencil.nodes;
  const std::size_t nn = pencil.nodes.size();
  sol.values.assign(nn, 0.0);
  for (std::size_t k = 0; k < n; ++k) sol.values[pencil.dof_node[k]] = x[k];
  if (pencil.bc == BoundaryKind::Periodic) sol.values[nn - 1] = sol.values[0];
  if (pencil.bc == BoundaryKind::Antiperiodic) sol.values[nn - 1] = -sol.values[0];
  sol.flux.assign(nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) {
    double s = 0.0;
    int cnt = 0;
    if (i > 0) {
      s += pencil.element_q[i - 1] * (sol.values[i] - sol.values[i - 1]) / (sol.grid[i] - sol.grid[i - 1]);
      ++cnt;
    }
    if (i + 1 < nn) {
      s += pencil.element_q[i] * (sol.values[i + 1] - sol.values[i]) / (sol.grid[i + 1] - sol.grid[i]);
      ++cnt;
    }
    sol.flux[i] = s / cnt;
  }
  double nrm = std::sqrt(trapezoid_norm2(sol.grid, sol.values));
  std::size_t imax = 0;
  for (std::size_t i = 0; i < nn; ++i)
    if (std::fabs(sol.values[i]) > std::fabs(sol.values[imax])) imax = i;
  const double sc = (sol.values[imax] < 0.0 ? -1.0 : 1.0) / nrm;
  for (auto& v : sol.values) v *= sc;
  for (auto& v : sol.flux) v *= sc;
  const double rq = rayleigh_quotient(pencil, x);
  sol.residual = std::fabs(rq - lambda) / std::max(std::fabs(lambda), 1e-300);
  return sol;
}

std::vector<double> dof_values(const Pencil& pencil, const EigenSolution& sol) {
  std::vector<double> x(pencil.dofs());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = sol.values[pencil.dof_node[k]];
  return x;
}

Pencil assemble_limit_operator(int n, const CellSpec& cell, double mesh_h) {
  cell.validate();
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (!(mesh_h > 0.0)) throw InvalidArgument("mesh_h must be positive");
  auto count = [&](double len, std::size_t minimum) {
    return std::max<std::size_t>(minimum, static_cast<std::size_t>(std::ceil(len / mesh_h - 1e-9)));
  };
  const std::size_t e_soft = count(cell.beta - cell.alpha, 2);
  const std::size_t soft_dofs = e_soft - 1;
  const std::size_t per_cell = 1 + soft_dofs;  // super-dof at the cell start, then soft interior nodes
  const std::size_t ndof = per_cell * static_cast<std::size_t>(n);

  Pencil p;
  p.bc = BoundaryKind::Periodic;
  p.K = SymTridiagonal(ndof, true);
  p.M = SymTridiagonal(ndof, true);
  p.K0 = SymTridiagonal(ndof, true);
  p.k_left.assign(ndof, 0.0);
  p.k_right.assign(ndof, 0.0);
  const double m = 1.0;
  for (int k = 0; k < n; ++k) {
    const std::size_t s_here = per_cell * k;
    const std::size_t s_next = per_cell * ((k + 1) % n);
    // Stiff parts [k, k+α] and [k+β, k+1] are carried whole by their super-dofs.
    p.M.add(s_here, s_here, m * cell.alpha);
    p.M.add(s_next, s_next, m * (1.0 - cell.beta));
    const double h = (cell.beta - cell.alpha) / static_cast<double>(e_soft);
    for (std::size_t j = 0; j < e_soft; ++j) {
      std::size_t a = j == 0 ? s_here : s_here + j;
      std::size_t b = j + 1 == e_soft ? s_next : s_here + j + 1;
      const double kk = cell.p_soft / h, mm = m * h;
      p.K.add(a, a, kk);
      p.K.add(b, b, kk);
      p.K.add(a, b, -kk);
      p.k_right[a] += kk;
      p.k_left[b] += kk;
      p.M.add(a, a, mm / 3.0);
      p.M.add(b, b, mm / 3.0);
      p.M.add(a, b, mm / 6.0);
    }
  }
  return p;
}

std::vector<double> limit_operator_spectrum(int n, const CellSpec& cell, int count, double mesh_h) {
  if (count < 1) throw InvalidArgument("count must be at least 1");
  Pencil p = assemble_limit_operator(n, cell, mesh_h);
  if (static_cast<std::size_t>(count) > p.dofs()) throw InsufficientRange("count exceeds the number of dofs");
  double hi = 16.0;
  while (count_below(p, hi) < static_cast<std::size_t>(count)) {
    hi *= 2.0;
    if (hi > 1e300) throw NoConvergence("spectrum bound not found");
  }
  BisectionOptions bo;
  bo.max_count = std::max<std::size_t>(bo.max_count, p.dofs());
  std::vector<double> out;
  for (const auto& ev : eigenvalues_in_window(p, {-1.0, hi}, bo))
    for (int k = 0; k < ev.multiplicity && static_cast<int>(out.size()) < count; ++k) out.push_back(ev.lambda);
  return out;
}

void dump_matrix(std::ostream& os, const SymTridiagonal& a) {
  const std::size_t n = a.size();
  os << "symmetric banded n=" << n << " bw=" << a.bandwidth() << "\n";
  os.precision(17);
  for (std::size_t i = 0; i < n; ++i) {
    os << i << ' ' << i << ' ' << a.diag[i] << "\n";
    if (i + 1 < n) os << i << ' ' << i + 1 << ' ' << a.off[i] << "\n";
  }
  if (a.periodic() && n > 2) os << 0 << ' ' << n - 1 << ' ' << a.corner << "\n";
}

}  // namespace hcs
