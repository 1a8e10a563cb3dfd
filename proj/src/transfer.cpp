// SPDX-License-Identifier: Apache-2.0
#include "hcspec/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hcspec/errors.hpp"

namespace hcs {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kMaxExp = 700.0;

double safe_exp(double a) { return a < -kMaxExp ? 0.0 : std::exp(std::min(a, kMaxExp)); }
}  // namespace

double ScaledValue::value() const {
  if (mantissa == 0.0) return 0.0;
  return mantissa * std::exp(log_scale);
}

TransferMatrix TransferMatrix::from_entries(double t11, double t12, double t21, double t22) {
  TransferMatrix m;
  double r11 = std::hypot(t11, t21);
  if (r11 == 0.0) throw InvalidArgument("singular transfer matrix");
  double c = t11 / r11, s = t21 / r11;
  m.q_[0] = c;
  m.q_[1] = -s;
  m.q_[2] = s;
  m.q_[3] = c;
  m.x_ = std::log(r11);
  m.rho_ = (c * t12 + s * t22) / r11;
  return m;
}

void TransferMatrix::left_multiply(const std::array<double, 4>& b, double scale) {
  const double a00 = b[0] * q_[0] + b[1] * q_[2];
  const double a01 = b[0] * q_[1] + b[1] * q_[3];
  const double a10 = b[2] * q_[0] + b[3] * q_[2];
  const double a11 = b[2] * q_[1] + b[3] * q_[3];
  const double r11 = std::hypot(a00, a10);
  const double c = a00 / r11, s = a10 / r11;
  const double r12 = c * a01 + s * a11;
  rho_ += (r12 / r11) * safe_exp(-2.0 * x_);
  x_ += scale + std::log(r11);
  q_[0] = c;
  q_[1] = -s;
  q_[2] = s;
  q_[3] = c;
}

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
  TransferMatrix out = b;
  out.left_multiply({1.0, a.rho_, 0.0, safe_exp(-2.0 * a.x_)}, a.x_);
  out.left_multiply({a.q_[0], a.q_[1], a.q_[2], a.q_[3]}, 0.0);
  return out;
}

double TransferMatrix::log_scale() const { return std::max(x_ + std::log1p(std::fabs(rho_)), -x_); }

std::array<double, 4> TransferMatrix::mantissa() const {
  const double l = log_scale();
  const double ep = safe_exp(x_ - l), em = safe_exp(-x_ - l);
  return {q_[0] * ep, q_[0] * rho_ * ep + q_[1] * em, q_[2] * ep, q_[2] * rho_ * ep + q_[3] * em};
}

std::array<double, 4> TransferMatrix::entries() const {
  auto m = mantissa();
  const double e = std::exp(log_scale());
  return {m[0] * e, m[1] * e, m[2] * e, m[3] * e};
}

double TransferMatrix::det() const { return q_[0] * q_[3] - q_[1] * q_[2]; }

double TransferMatrix::entry_det() const {
  auto t = entries();
  return t[0] * t[3] - t[1] * t[2];
}

ScaledValue TransferMatrix::trace_shifted(double shift) const {
  auto m = mantissa();
  const double l = log_scale();
  return {m[0] + m[3] + shift * std::exp(-l), l};
}

ScaledValue TransferMatrix::entry(int i, int j) const { return {mantissa()[2 * i + j], log_scale()}; }

double TransferMatrix::half_trace() const { return 0.5 * trace_shifted(0.0).value(); }

SegmentFactor segment_factor(double length, const EffectiveCoefficients& c, double lambda) {
  const double s = (lambda * c.m - c.r) / c.q;
  const double sl2 = s * length * length;
  if (std::fabs(sl2) < 1e-8) {
    const double d = 1.0 - 0.5 * sl2;
    const double f = 1.0 - sl2 / 6.0;
    return {{d, length / c.q * f, -c.q * s * length * f, d}, 0.0};
  }
  if (s > 0.0) {
    const double w = std::sqrt(s), th = w * length;
    const double cs = std::cos(th), sn = std::sin(th);
    return {{cs, sn / (c.q * w), -c.q * w * sn, cs}, 0.0};
  }
  const double w = std::sqrt(-s), th = w * length;
  const double e = std::exp(-2.0 * th), om = -std::expm1(-2.0 * th);
  return {{0.5 * (1.0 + e), om / (2.0 * c.q * w), 0.5 * c.q * w * om, 0.5 * (1.0 + e)}, th};
}

SegmentFactor segment_factor_inverse(double length, const EffectiveCoefficients& c, double lambda) {
  SegmentFactor f = segment_factor(length, c, lambda);
  return {{f.b[3], -f.b[1], -f.b[2], f.b[0]}, f.scale};
}

TransferMatrix segment_transfer(const Segment& seg, double lambda, const WaveParams& wave) {
  TransferMatrix m;
  auto f = segment_factor(seg.length, effective(seg, wave), lambda);
  m.left_multiply(f.b, f.scale);
  return m;
}

TransferMatrix propagate(const CoefficientProfile& profile, double lambda, const WaveParams& wave) {
  TransferMatrix m;
  for (const auto& seg : profile.segments()) {
    auto f = segment_factor(seg.length, effective(seg, wave), lambda);
    m.left_multiply(f.b, f.scale);
  }
  return m;
}

double monodromy_half_trace(const CoefficientProfile& cell_profile, double lambda, const WaveParams& wave) {
  return propagate(cell_profile, lambda, wave).half_trace();
}

ScaledValue characteristic(const CoefficientProfile& profile, double lambda, BoundaryKind bc,
                           const WaveParams& wave) {
  TransferMatrix m = propagate(profile, lambda, wave);
  switch (bc) {
    case BoundaryKind::Dirichlet: return m.entry(0, 1);
    case BoundaryKind::Neumann: return m.entry(1, 0);
    case BoundaryKind::Periodic: return m.trace_shifted(-2.0);
    case BoundaryKind::Antiperiodic: return m.trace_shifted(2.0);
  }
  return {};
}

namespace {

// Advances φ = atan2(u, q u') across one segment.
double prufer_step(double phi, double length, const EffectiveCoefficients& c, double lambda) {
  const double s = (lambda * c.m - c.r) / c.q;
  double k = std::floor(phi / kPi);
  double pr = phi - k * kPi;
  if (s > 0.0 && s * length * length >= 1e-8) {
    // Exact in the scaled angle ψ with tan ψ = qω·u / (q u').
    const double w = std::sqrt(s), cq = c.q * w;
    double psi = k * kPi + std::atan2(cq * std::sin(pr), std::cos(pr));
    psi += w * length;
    double kk = std::floor(psi / kPi);
    double ps = psi - kk * kPi;
    return kk * kPi + std::atan2(std::sin(ps), cq * std::cos(ps));
  }
  // Non-oscillatory segment: u has at most one zero, crossed upward.
  auto f = segment_factor(length, c, lambda);
  const double u0 = std::sin(pr), v0 = std::cos(pr);
  const double u1 = f.b[0] * u0 + f.b[1] * v0;
  const double v1 = f.b[2] * u0 + f.b[3] * v0;
  double a = std::atan2(u1, v1);
  if (a < 0.0 || a >= kPi) {
    a = a < 0.0 ? a + kPi : a - kPi;
    return (k + 1.0) * kPi + a;
  }
  return k * kPi + a;
}

std::size_t count_strict(double phi, double target) {
  if (!(phi > target)) return 0;
  return static_cast<std::size_t>(std::ceil((phi - target) / kPi));
}

}  // namespace

double prufer_angle(const CoefficientProfile& profile, double lambda, double phi0, const WaveParams& wave) {
  double phi = phi0;
  for (const auto& seg : profile.segments()) phi = prufer_step(phi, seg.length, effective(seg, wave), lambda);
  return phi;
}

std::size_t count_below(const CoefficientProfile& profile, double lambda, BoundaryKind bc, const WaveParams& wave) {
  switch (bc) {
    case BoundaryKind::Dirichlet: return count_strict(prufer_angle(profile, lambda, 0.0, wave), kPi);
    case BoundaryKind::Neumann: return count_strict(prufer_angle(profile, lambda, 0.5 * kPi, wave), 0.5 * kPi);
    case BoundaryKind::Periodic:
    case BoundaryKind::Antiperiodic: {
      // Hill interlacing: Dirichlet count plus the side of the discriminant.
      std::size_t nd = count_strict(prufer_angle(profile, lambda, 0.0, wave), kPi);
      double shift = bc == BoundaryKind::Periodic ? -2.0 : 2.0;
      int sg = propagate(profile, lambda, wave).trace_shifted(shift).sign();
      if (nd % 2 == 1) sg = -sg;
      return nd + (sg < 0 ? 1 : 0);
    }
  }
  return 0;
}

namespace {

double polish(const CoefficientProfile& profile, BoundaryKind bc, const WaveParams& wave, double a, double b) {
  ScaledValue fa = characteristic(profile, a, bc, wave), fb = characteristic(profile, b, bc, wave);
  if (fa.sign() == 0) return a;
  if (fb.sign() == 0) return b;
  if (fa.sign() == fb.sign()) return 0.5 * (a + b);
  const double ref = std::max(fa.log_scale, fb.log_scale);
  auto val = [&](const ScaledValue& v) { return v.mantissa * safe_exp(v.log_scale - ref); };
  double va = val(fa), vb = val(fb);
  int side = 0;
  for (int it = 0; it < 60; ++it) {
    double c = (a * vb - b * va) / (vb - va);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    if (!(c > a && c < b)) break;
    double vc = val(characteristic(profile, c, bc, wave));
    if (vc == 0.0) return c;
    if ((vc < 0.0) == (va < 0.0)) {
      a = c;
      va = vc;
      if (side == -1) vb *= 0.5;
      side = -1;
    } else {
      b = c;
      vb = vc;
      if (side == 1) va *= 0.5;
      side = 1;
    }
  }
  return std::fabs(va) < std::fabs(vb) ? a : b;
}

// The discriminant has a double root where bands touch; rounding splits it into two
// close roots. Merge them when the monodromy is ±I there (t12 = t21 = 0).
std::vector<Bracket> merge_coexistence(const CoefficientProfile& profile, const WaveParams& wave,
                                       std::vector<Bracket> in) {
  std::vector<Bracket> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i].multiplicity == 1 && i + 1 < in.size() && in[i + 1].multiplicity == 1) {
      double a = in[i].lo, b = in[i + 1].hi;
      if (b - a <= 1e-6 * std::max(1.0, std::fabs(b))) {
        auto m = propagate(profile, 0.5 * (a + b), wave).mantissa();
        double off = std::max(std::fabs(m[1]), std::fabs(m[2]));
        if (off <= 1e-5 && std::fabs(m[0] - m[3]) <= 1e-5) {
          out.push_back({a, b, 2});
          ++i;
          continue;
        }
      }
    }
    out.push_back(in[i]);
  }
  return out;
}

}  // namespace

std::vector<EigenValue> eigenvalues_in(const CoefficientProfile& profile, BoundaryKind bc, Window window,
                                       const TransferOptions& opts) {
  auto count = [&](double lam) { return count_below(profile, lam, bc, opts.wave); };
  auto brackets = bisect_spectrum(count, window, opts.bisection);
  const bool hill = bc == BoundaryKind::Periodic || bc == BoundaryKind::Antiperiodic;
  if (hill) brackets = merge_coexistence(profile, opts.wave, std::move(brackets));
  std::vector<EigenValue> out;
  out.reserve(brackets.size());
  for (const auto& br : brackets) {
    double lam = 0.5 * (br.lo + br.hi);
    if (opts.polish && br.multiplicity == 1) lam = polish(profile, bc, opts.wave, br.lo, br.hi);
    if (opts.polish && br.multiplicity == 2 && hill) {
      // At a coexistence point the Dirichlet shot vanishes too.
      double d = polish(profile, BoundaryKind::Dirichlet, opts.wave, br.lo, br.hi);
      if (d >= br.lo && d <= br.hi) lam = d;
    }
    ScaledValue ch = characteristic(profile, lam, bc, opts.wave);
    out.push_back({lam + 0.0, br.multiplicity, std::fabs(ch.mantissa)});
  }
  return out;
}

namespace {

struct Shot {
  std::vector<std::array<double, 2>> dir;
  std::vector<double> lognorm;
};

void normalize(std::array<double, 2>& v, double& lognorm) {
  double n = std::hypot(v[0], v[1]);
  v[0] /= n;
  v[1] /= n;
  lognorm += std::log(n);
}

std::array<double, 2> mat_vec(const std::array<double, 4>& b, const std::array<double, 2>& v) {
  return {b[0] * v[0] + b[1] * v[1], b[2] * v[0] + b[3] * v[1]};
}

}  // namespace

EigenSolution eigenfunction(const CoefficientProfile& profile, BoundaryKind bc, double lambda,
                            const EigenfunctionOptions& opts) {
  if (opts.samples_per_segment < 1) throw InvalidArgument("samples_per_segment must be positive");
  const double half = opts.eigen_tolerance * std::max(std::fabs(lambda), 1e-6);
  std::size_t jump = count_below(profile, lambda + half, bc, opts.wave) -
                     count_below(profile, lambda - half, bc, opts.wave);
  if (jump == 0) throw NotAnEigenvalue("no eigenvalue within the tolerance of " + std::to_string(lambda));

  const std::size_t n = profile.size();
  const auto& segs = profile.segments();
  const auto& xs = profile.breakpoints();
  std::vector<EffectiveCoefficients> coef(n);
  for (std::size_t i = 0; i < n; ++i) coef[i] = effective(segs[i], opts.wave);

  std::array<double, 2> va{0.0, 1.0}, vb{0.0, 1.0};
  if (bc == BoundaryKind::Neumann) va = vb = {1.0, 0.0};
  if (bc == BoundaryKind::Periodic || bc == BoundaryKind::Antiperiodic) {
    TransferMatrix m = propagate(profile, lambda, opts.wave);
    auto mh = m.mantissa();
    const double sh = (bc == BoundaryKind::Periodic ? -1.0 : 1.0) * std::exp(-m.log_scale());
    double a00 = mh[0] + sh, a01 = mh[1], a10 = mh[2], a11 = mh[3] + sh;
    double n0 = std::hypot(a00, a01), n1 = std::hypot(a10, a11);
    if (m.log_scale() > 8.0) {
      // Strongly hyperbolic monodromy: the null vector of M ∓ I is swamped by the rank-one
      // part of M. Both shots forget a generic start while growing toward the mode.
      va = {std::sqrt(0.5), std::sqrt(0.5)};
    } else if (std::max(n0, n1) < 1e-10) {
      va = {1.0, 0.0};
    } else if (n0 >= n1) {
      va = {a01 / n0, -a00 / n0};
    } else {
      va = {a11 / n1, -a10 / n1};
    }
    vb = bc == BoundaryKind::Periodic ? va : std::array<double, 2>{-va[0], -va[1]};
  }

  Shot left{std::vector<std::array<double, 2>>(n + 1), std::vector<double>(n + 1)};
  Shot right = left;
  left.dir[0] = va;
  left.lognorm[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto f = segment_factor(segs[i].length, coef[i], lambda);
    auto w = mat_vec(f.b, left.dir[i]);
    double l = left.lognorm[i] + f.scale;
    normalize(w, l);
    left.dir[i + 1] = w;
    left.lognorm[i + 1] = l;
  }
  right.dir[n] = vb;
  right.lognorm[n] = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    auto f = segment_factor_inverse(segs[i].length, coef[i], lambda);
    auto w = mat_vec(f.b, right.dir[i + 1]);
    double l = right.lognorm[i + 1] + f.scale;
    normalize(w, l);
    right.dir[i] = w;
    right.lognorm[i] = l;
  }

  std::size_t join = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n; ++i) {
    double mis = std::fabs(left.dir[i][0] * right.dir[i][1] - left.dir[i][1] * right.dir[i][0]);
    if (mis < best) {
      best = mis;
      join = i;
    }
  }
  const double orient =
      left.dir[join][0] * right.dir[join][0] + left.dir[join][1] * right.dir[join][1] < 0.0 ? -1.0 : 1.0;
  const double lref = left.lognorm[join], rref = right.lognorm[join];

  EigenSolution sol;
  sol.lambda = lambda;
  sol.bc = bc;
  sol.solver = SolverKind::Transfer;
  sol.multiplicity = static_cast<int>(jump);
  sol.match_defect = best;
  const int k = opts.samples_per_segment;
  sol.grid.reserve(n * k + 1);
  auto push = [&](double x, const std::array<double, 2>& st, double lg, double sign) {
    double e = sign * safe_exp(lg);
    sol.grid.push_back(x);
    sol.values.push_back(st[0] * e);
    sol.flux.push_back(st[1] * e);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double len = segs[i].length;
    if (i < join) {
      for (int j = 0; j < k; ++j) {
        double d = len * j / k;
        auto st = left.dir[i];
        double lg = left.lognorm[i] - lref;
        if (j > 0) {
          auto f = segment_factor(d, coef[i], lambda);
          st = mat_vec(f.b, st);
          lg += f.scale;
        }
        push(xs[i] + d, st, lg, 1.0);
      }
    } else {
      for (int j = 0; j < k; ++j) {
        double d = len * (k - j) / k;
        if (j == 0 && i == join) {
          push(xs[i], left.dir[i], left.lognorm[i] - lref, 1.0);
          continue;
        }
        auto f = segment_factor_inverse(d, coef[i], lambda);
        auto st = mat_vec(f.b, right.dir[i + 1]);
        push(xs[i + 1] - d, st, right.lognorm[i + 1] - rref + f.scale, orient);
      }
    }
  }
  if (join == n) push(xs[n], left.dir[n], left.lognorm[n] - lref, 1.0);
  else push(xs[n], right.dir[n], right.lognorm[n] - rref, orient);

  double nrm = std::sqrt(trapezoid_norm2(sol.grid, sol.values));
  std::size_t imax = 0;
  for (std::size_t i = 0; i < sol.values.size(); ++i)
    if (std::fabs(sol.values[i]) > std::fabs(sol.values[imax])) imax = i;
  const double scale = (sol.values[imax] < 0.0 ? -1.0 : 1.0) / nrm;
  for (auto& v : sol.values) v *= scale;
  for (auto& v : sol.flux) v *= scale;
  sol.residual = std::fabs(characteristic(profile, lambda, bc, opts.wave).mantissa);
  return sol;
}

}  // namespace hcs
