// SPDX-License-Identifier: Apache-2.0
#include "hcspec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "hcspec/dispersion.hpp"
#include "hcspec/errors.hpp"
#include "hcspec/fem.hpp"
#include "hcspec/transfer.hpp"

namespace hcs {

double dispersion_vs_monodromy(double alpha, double beta, const std::vector<double>& eps_list,
                               const std::vector<double>& lambda_grid) {
  if (eps_list.empty() || lambda_grid.empty()) throw InvalidArgument("empty grid");
  CellSpec cell;
  cell.alpha = alpha;
  cell.beta = beta;
  cell.validate();
  double worst = 0.0;
  for (double eps : eps_list) {
    const auto c = build_rescaled_cell(cell, eps);
    for (double lam : lambda_grid)
      worst = std::max(worst, std::fabs(finite_eps_lhs(lam, eps, alpha, beta) - monodromy_half_trace(c, eps * eps * lam)));
  }
  return worst;
}

std::complex<double> QuasiperiodicCellSpace::phase() const {
  return std::polar(1.0, 2.0 * std::numbers::pi * theta);
}

bool QuasiperiodicCellSpace::stiff_element(int e) const {
  const double mid = (e + 0.5) * h();
  return mid < alpha || mid > beta;
}

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Grams {
  Mat full, q1d, h1;
};

int elements_for(double mesh_h) {
  if (!(mesh_h > 0.0 && mesh_h <= 0.5)) throw InvalidArgument("mesh_h must lie in (0, 1/2]");
  return static_cast<int>(std::lround(1.0 / mesh_h));
}

void require_aligned(const QuasiperiodicCellSpace& s) {
  for (double x : {s.alpha, s.beta}) {
    const double k = x * s.elements;
    if (std::fabs(k - std::round(k)) > 1e-9) throw InvalidArgument("alpha and beta must be mesh nodes");
  }
}

Grams assemble_grams(const QuasiperiodicCellSpace& s) {
  const int n = s.dofs();
  const double h = s.h();
  const auto w = s.phase();
  Grams g{Mat::Zero(n, n), Mat::Zero(n, n), Mat::Zero(n, n)};
  Vec l = Vec::Zero(n);  // ∫_{Q₁} u = lᵀu
  for (int e = 0; e < n; ++e) {
    const int dof[2] = {e, (e + 1) % n};
    const std::complex<double> sg[2] = {1.0, e + 1 == n ? w : std::complex<double>(1.0)};
    const double k[2][2] = {{1.0 / h, -1.0 / h}, {-1.0 / h, 1.0 / h}};
    const double m[2][2] = {{h / 3.0, h / 6.0}, {h / 6.0, h / 3.0}};
    const bool stiff = s.stiff_element(e);
    for (int a = 0; a < 2; ++a) {
      if (stiff) l(dof[a]) += 0.5 * h * sg[a];
      for (int b = 0; b < 2; ++b) {
        const auto f = std::conj(sg[a]) * sg[b];
        g.full(dof[a], dof[b]) += f * k[a][b];
        g.h1(dof[a], dof[b]) += f * (k[a][b] + m[a][b]);
        if (stiff) g.q1d(dof[a], dof[b]) += f * k[a][b];
      }
    }
  }
  g.full += l.conjugate() * l.transpose();
  return g;
}

// η(θ, ·) plus the hats of nodes inside (α, β).
Mat v_theta_basis(const QuasiperiodicCellSpace& s) {
  const int n = s.dofs();
  const auto w = s.phase();
  std::vector<int> interior;
  for (int j = 0; j < n; ++j) {
    const double x = j * s.h();
    if (x > s.alpha + 1e-12 && x < s.beta - 1e-12) interior.push_back(j);
  }
  Mat b = Mat::Zero(n, 1 + static_cast<Eigen::Index>(interior.size()));
  for (int j = 0; j < n; ++j) {
    const double x = j * s.h();
    if (x <= s.alpha + 1e-12) b(j, 0) = 1.0;
    else if (x >= s.beta - 1e-12) b(j, 0) = w;
    else b(j, 0) = 1.0 + (w - 1.0) * ((x - s.alpha) / (s.beta - s.alpha));
  }
  for (std::size_t k = 0; k < interior.size(); ++k) b(interior[k], static_cast<Eigen::Index>(k) + 1) = 1.0;
  return b;
}

}  // namespace

double poincare_constant(double alpha, double beta, double theta, double mesh_h, const PoincareOptions& opts) {
  CellSpec cell;
  cell.alpha = alpha;
  cell.beta = beta;
  cell.validate();
  if (!(theta >= 0.0 && theta < 1.0)) throw OutOfDomain("theta must lie in [0, 1)");
  QuasiperiodicCellSpace s{theta, alpha, beta, elements_for(mesh_h)};
  require_aligned(s);
  const Grams g = assemble_grams(s);
  const Mat& inner = opts.h1_complement ? g.h1 : g.full;
  const Mat b = v_theta_basis(s);
  const Eigen::Index n = b.rows(), m = b.cols();
  if (n - m < 1) throw DegenerateSpace("the complement of V(theta) is empty on this mesh");
  const Mat gb = inner * b;
  Eigen::HouseholderQR<Mat> qr(gb);
  const Mat q = qr.householderQ();
  const Mat comp = q.rightCols(n - m);
  const Mat a = comp.adjoint() * g.q1d * comp;
  const Mat d = comp.adjoint() * inner * comp;
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(0.5 * (a + a.adjoint()), 0.5 * (d + d.adjoint()),
                                                   Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NoConvergence("generalized eigensolver failed");
  return es.eigenvalues()(0);
}

PoincareTable poincare_uniform_constant(double alpha, double beta, const std::vector<double>& theta_grid,
                                        const std::vector<double>& mesh_h_list, const PoincareOptions& opts) {
  if (theta_grid.empty() || mesh_h_list.empty()) throw InvalidArgument("empty grid");
  PoincareTable t;
  t.alpha = alpha;
  t.beta = beta;
  t.thetas = theta_grid;
  t.hs = mesh_h_list;
  t.h1_complement = opts.h1_complement;
  for (double h : mesh_h_list) {
    std::vector<double> row;
    for (double th : theta_grid) row.push_back(poincare_constant(alpha, beta, th, h, opts));
    t.min_c.push_back(*std::min_element(row.begin(), row.end()));
    t.c.push_back(std::move(row));
  }
  return t;
}

std::vector<double> poincare_theta_grid() {
  std::vector<double> g{0.0, 5e-4};
  for (int k = 1; k <= 30; ++k) g.push_back(k / 32.0);
  g.push_back(1.0 - 5e-4);
  return g;
}

std::vector<double> poincare_theta_grid_refined() {
  std::vector<double> g{0.0, 2.5e-4, 5e-4};
  for (int k = 1; k <= 62; ++k) g.push_back(k / 64.0);
  g.push_back(1.0 - 5e-4);
  g.push_back(1.0 - 2.5e-4);
  return g;
}

ClassicalPoincareReport classical_poincare_check(double alpha, double beta, double mesh_h, int trials,
                                                 std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be positive");
  CellSpec cell;
  cell.alpha = alpha;
  cell.beta = beta;
  cell.validate();
  const int ne = elements_for(mesh_h);
  const int n = ne + 1;
  const double h = 1.0 / ne;
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n, n), stiff = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd l = Eigen::VectorXd::Zero(n);
  for (int e = 0; e < ne; ++e) {
    mass(e, e) += h / 3.0;
    mass(e + 1, e + 1) += h / 3.0;
    mass(e, e + 1) += h / 6.0;
    mass(e + 1, e) += h / 6.0;
    stiff(e, e) += 1.0 / h;
    stiff(e + 1, e + 1) += 1.0 / h;
    stiff(e, e + 1) -= 1.0 / h;
    stiff(e + 1, e) -= 1.0 / h;
    const double mid = (e + 0.5) * h;
    if (mid < alpha || mid > beta) {
      l(e) += 0.5 * h;
      l(e + 1) += 0.5 * h;
    }
  }
  const Eigen::MatrixXd denom = stiff + l * l.transpose();
  const double q1 = 1.0 - beta + alpha;

  ClassicalPoincareReport r;
  r.c_p = 2.0 / (q1 * q1);
  r.trials = trials;
  r.seed = seed;
  auto ratio = [&](const Eigen::VectorXcd& u) {
    const double num = (u.adjoint() * mass * u)(0).real();
    const double den = (u.adjoint() * denom * u)(0).real();
    return num / den;
  };
  r.constant_ratio = ratio(Eigen::VectorXcd::Ones(n));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd u(n);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      u(i) = {re, im};
    }
    r.worst_ratio = std::max(r.worst_ratio, ratio(u));
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(mass, denom, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NoConvergence("generalized eigensolver failed");
  r.sharp_constant = es.eigenvalues()(n - 1);
  r.passed = r.worst_ratio <= r.c_p && r.constant_ratio <= r.c_p && r.sharp_constant <= r.c_p;
  return r;
}

ContinuityReport lambda_continuity(double alpha, double beta, int k_max, const std::vector<int>& sizes) {
  if (k_max < 1 || sizes.empty()) throw InvalidArgument("need k_max >= 1 and at least one grid");
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
    if (sizes[i] < 1 || sizes[i + 1] % sizes[i] != 0) throw InvalidArgument("theta grids must be nested");
  const auto kind = DispersionKind::limit(alpha, beta);
  ContinuityReport r;
  r.grid_sizes = sizes;
  std::vector<double> lx, ly;
  for (int g : sizes) {
    std::vector<double> th;
    for (int i = 0; i <= g; ++i) th.push_back(static_cast<double>(i) / g);
    const auto br = bloch_eigenvalues(kind, th, k_max);
    double mod = 0.0;
    for (int i = 0; i < g; ++i)
      for (int k = 0; k < k_max; ++k)
        mod = std::max(mod, std::fabs(br[i + 1].eigenvalues[k] - br[i].eigenvalues[k]));
    for (int i = 0; i <= g; ++i)
      for (int k = 0; k < k_max; ++k)
        r.symmetry_error = std::max(r.symmetry_error, std::fabs(br[i].eigenvalues[k] - br[g - i].eigenvalues[k]));
    r.moduli.push_back(mod);
    const double d1 = br[1].eigenvalues[0] - br[0].eigenvalues[0];
    if (d1 > 0.0) {
      lx.push_back(std::log(static_cast<double>(g)));
      ly.push_back(std::log(d1));
    }
  }
  r.passed = true;
  for (std::size_t i = 0; i + 1 < r.moduli.size(); ++i) {
    const double doublings = std::log2(static_cast<double>(sizes[i + 1]) / sizes[i]);
    const double ratio = r.moduli[i + 1] / r.moduli[i];
    r.ratios.push_back(ratio);
    if (!(ratio <= std::pow(0.6, doublings))) r.passed = false;
  }
  if (lx.size() >= 2) {
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    r.k1_exponent = sxx > 0.0 ? -sxy / sxx : 0.0;
  }
  return r;
}

NqReport bloch_vs_nq(const std::vector<int>& n_list, double alpha, double beta, int count, double mesh_h) {
  if (count < 1) throw InvalidArgument("count must be positive");
  CellSpec cell;
  cell.alpha = alpha;
  cell.beta = beta;
  cell.validate();
  const auto kind = DispersionKind::limit(alpha, beta);
  NqReport r;
  r.n_list = n_list;
  for (int n : n_list) {
    if (n < 1 || n > 6) throw InvalidArgument("n must lie in 1..6");
    std::vector<double> th;
    for (int j = 0; j < n; ++j) th.push_back(static_cast<double>(j) / n);
    std::vector<double> d1;
    for (const auto& b : bloch_eigenvalues(kind, th, count)) d1.insert(d1.end(), b.eigenvalues.begin(), b.eigenvalues.end());
    std::sort(d1.begin(), d1.end());
    const auto d2 = limit_operator_spectrum(n, cell, n * count, mesh_h);
    double worst = 0.0;
    for (std::size_t i = 0; i < d1.size() && i < d2.size(); ++i)
      worst = std::max(worst, std::fabs(d1[i] - d2[i]) / std::max(1.0, std::fabs(d1[i])));
    r.discrepancy.push_back(worst);
    r.worst = std::max(r.worst, worst);
  }
  return r;
}

}  // namespace hcs
