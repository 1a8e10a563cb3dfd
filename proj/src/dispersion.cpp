// SPDX-License-Identifier: Apache-2.0
#include "hcspec/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hcspec/errors.hpp"

namespace hcs {

namespace {

double limit_t(double t, double alpha, double beta) {
  const double w = t * (alpha - beta);
  return 0.5 * (alpha - beta + 1.0) * t * std::sin(w) + std::cos(w);
}

double finite_t(double t, double eps, double alpha, double beta) {
  const double w = t * (alpha - beta);
  const double v = eps * t * (alpha - beta + 1.0);
  return 0.5 * (1.0 / eps + eps) * std::sin(v) * std::sin(w) + std::cos(v) * std::cos(w);
}

double kappa_t(double t, double kappa, double alpha, double beta) {
  const double d = alpha - beta;
  const double q1 = d + 1.0;
  if (t == 0.0) return 1.0 - 0.5 * q1 * kappa * kappa * d;  // t→0 limit
  const double w = t * d;
  return 0.5 * q1 * (t - kappa * kappa / t) * std::sin(w) + std::cos(w);
}

}  // namespace

double limit_lhs(double lambda, double alpha, double beta) {
  if (!(lambda >= 0.0)) throw DegenerateLambda("lambda must be nonnegative");
  return limit_t(std::sqrt(lambda), alpha, beta);
}

double finite_eps_lhs(double lambda, double eps, double alpha, double beta) {
  if (!(lambda >= 0.0)) throw DegenerateLambda("lambda must be nonnegative");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  return finite_t(std::sqrt(lambda), eps, alpha, beta);
}

double kappa_limit_lhs(double lambda, double kappa, double alpha, double beta) {
  if (kappa < 0.0) throw InvalidArgument("kappa must be nonnegative");
  if (kappa == 0.0) return limit_lhs(lambda, alpha, beta);
  if (!(lambda > 0.0)) throw DegenerateLambda("kappa_limit_lhs needs lambda > 0 when kappa > 0");
  return kappa_t(std::sqrt(lambda), kappa, alpha, beta);
}

DispersionKind DispersionKind::limit(double alpha, double beta) {
  DispersionKind k;
  k.type = Type::Limit;
  k.alpha = alpha;
  k.beta = beta;
  k.validate();
  return k;
}

DispersionKind DispersionKind::finite_eps(double eps, double alpha, double beta) {
  DispersionKind k = limit(alpha, beta);
  k.type = Type::FiniteEps;
  k.eps = eps;
  k.validate();
  return k;
}

DispersionKind DispersionKind::kappa_limit(double kappa, double alpha, double beta) {
  DispersionKind k = limit(alpha, beta);
  k.type = Type::KappaLimit;
  k.kappa = kappa;
  k.validate();
  return k;
}

void DispersionKind::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0 && beta > alpha && beta < 1.0))
    throw InvalidCell("need 0 < alpha < beta < 1");
  if (type == Type::FiniteEps && !(eps > 0.0)) throw InvalidArgument("FiniteEps needs eps > 0");
  if (type == Type::KappaLimit && !(kappa >= 0.0)) throw InvalidArgument("KappaLimit needs kappa >= 0");
}

double DispersionKind::lhs(double lambda) const {
  switch (type) {
    case Type::Limit: return limit_lhs(lambda, alpha, beta);
    case Type::FiniteEps: return finite_eps_lhs(lambda, eps, alpha, beta);
    case Type::KappaLimit: return kappa_limit_lhs(lambda, kappa, alpha, beta);
  }
  return 0.0;
}

double DispersionKind::lhs_t(double t) const {
  switch (type) {
    case Type::Limit: return limit_t(t, alpha, beta);
    case Type::FiniteEps: return finite_t(t, eps, alpha, beta);
    case Type::KappaLimit: return kappa == 0.0 ? limit_t(t, alpha, beta) : kappa_t(t, kappa, alpha, beta);
  }
  return 0.0;
}

namespace {

class Scanner {
 public:
  Scanner(const DispersionKind& kind, const ScanOptions& opts) : kind_(kind), opts_(opts) {}

  double g(double t) {
    if (++evals_ > opts_.budget) throw ScanBudgetExceeded("band scan exceeded its evaluation budget");
    return std::fabs(kind_.lhs_t(t)) - 1.0;
  }

  // Bisection to full double precision; returns the in-band endpoint side midpoint.
  double crossing(double a, double b, bool a_in_band) {
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (a + b);
      if (!(mid > a && mid < b)) break;
      bool in = g(mid) <= 0.0;
      if (in == a_in_band) a = mid; else b = mid;
    }
    width_ = std::max(width_, (b - a) / std::max(b, 1e-300));
    return 0.5 * (a + b);
  }

  // Golden-section search for an extremum of g on [a, b]; sign = +1 for max, -1 for min.
  std::pair<double, double> extremum(double a, double b, double sign) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = sign * g(c), fd = sign * g(d);
    for (int it = 0; it < 120 && (b - a) > 4.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
      if (fc > fd) {
        b = d; d = c; fd = fc;
        c = b - r * (b - a); fc = sign * g(c);
      } else {
        a = c; c = d; fc = fd;
        d = a + r * (b - a); fd = sign * g(d);
      }
    }
    return fc > fd ? std::pair{c, sign * fc} : std::pair{d, sign * fd};
  }

  std::size_t evaluations() const { return evals_; }
  double width() const { return width_; }

 private:
  const DispersionKind& kind_;
  const ScanOptions& opts_;
  std::size_t evals_ = 0;
  double width_ = 0.0;
};

struct Event {
  double t;
  enum Kind { Toggle, Touch } kind;
};

double characteristic_frequency(const DispersionKind& kind) {
  double f = kind.beta - kind.alpha;
  if (kind.type == DispersionKind::Type::FiniteEps) f += kind.eps * (1.0 - kind.beta + kind.alpha);
  return f;
}

}  // namespace

BandStructure band_structure(const DispersionKind& kind, double lambda_max, const ScanOptions& opts) {
  kind.validate();
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) throw InvalidArgument("lambda_max must be positive");
  Scanner sc(kind, opts);
  const double t_max = std::sqrt(lambda_max);
  const double freq = characteristic_frequency(kind);
  std::size_t n = std::max<std::size_t>(opts.min_grid, static_cast<std::size_t>(std::ceil(t_max * freq * 64.0 / std::numbers::pi)));
  n = std::min<std::size_t>(n, opts.budget / 4 + 2);
  std::vector<double> ts(n + 1), gs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    ts[i] = t_max * static_cast<double>(i) / static_cast<double>(n);
    gs[i] = sc.g(ts[i]);
  }

  const double touch = 1e-11;
  std::vector<Event> events;
  for (std::size_t i = 0; i < n; ++i) {
    bool in0 = gs[i] <= 0.0, in1 = gs[i + 1] <= 0.0;
    if (in0 != in1) events.push_back({sc.crossing(ts[i], ts[i + 1], in0), Event::Toggle});
    if (i == 0) continue;
    double gm = gs[i - 1], g0 = gs[i], gp = gs[i + 1];
    bool inm = gm <= 0.0, in = g0 <= 0.0;
    if (inm != in || in != in1) continue;
    double curvature = std::fabs(gp - 2.0 * g0 + gm);
    double near = std::max(opts.touch_tolerance, 4.0 * curvature);
    if (in && g0 >= gm && g0 >= gp && -g0 < near) {
      // local maximum inside a band: a gap may hide here
      auto [te, ge] = sc.extremum(ts[i - 1], ts[i + 1], 1.0);
      if (ge > touch) {
        events.push_back({sc.crossing(ts[i - 1], te, true), Event::Toggle});
        events.push_back({sc.crossing(te, ts[i + 1], false), Event::Toggle});
      } else if (ge >= -touch) {
        events.push_back({te, Event::Touch});
      }
    } else if (!in && g0 <= gm && g0 <= gp && g0 < near) {
      auto [te, ge] = sc.extremum(ts[i - 1], ts[i + 1], -1.0);
      if (ge <= 0.0) {
        events.push_back({sc.crossing(ts[i - 1], te, false), Event::Toggle});
        events.push_back({sc.crossing(te, ts[i + 1], true), Event::Toggle});
      }
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.t < b.t; });

  BandStructure bs;
  bs.lambda_max = lambda_max;
  bool in_band = gs[0] <= 0.0;
  double start = 0.0;
  for (const auto& e : events) {
    double lam = e.t * e.t;
    if (e.kind == Event::Touch) {
      if (!in_band) continue;
      bs.bands.push_back({start, lam});
      bs.gaps.push_back({lam, lam, true});
      start = lam;
      continue;
    }
    if (in_band) bs.bands.push_back({start, lam});
    else bs.gaps.push_back({start, lam, false});
    start = lam;
    in_band = !in_band;
  }
  if (in_band) bs.bands.push_back({start, lambda_max});
  else bs.gaps.push_back({start, lambda_max, false});
  bs.edge_tolerance = std::max(sc.width(), 4.0 * std::numeric_limits<double>::epsilon()) * 2.0;
  bs.evaluations = sc.evaluations();
  return bs;
}

namespace {

double normalize_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in [0,1]");
  return theta == 1.0 ? 0.0 : theta;
}

std::vector<double> band_roots(const DispersionKind& kind, double lo, double hi, double c) {
  const int samples = 64;
  double tlo = std::sqrt(lo), thi = std::sqrt(hi);
  auto h = [&](double t) { return kind.lhs_t(t) - c; };
  std::vector<double> ts(samples + 1), hs(samples + 1);
  for (int j = 0; j <= samples; ++j) {
    ts[j] = j == samples ? thi : tlo + (thi - tlo) * j / samples;
    hs[j] = h(ts[j]);
  }
  std::vector<double> roots;
  for (int j = 0; j < samples; ++j) {
    double a = ts[j], b = ts[j + 1], ha = hs[j], hb = hs[j + 1];
    if (ha == 0.0) {
      roots.push_back(a);
      continue;
    }
    if ((ha < 0.0) == (hb < 0.0) || hb == 0.0) continue;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (a + b);
      if (!(mid > a && mid < b)) break;
      double hm = h(mid);
      if (hm == 0.0) { a = b = mid; break; }
      if ((hm < 0.0) == (ha < 0.0)) { a = mid; ha = hm; } else { b = mid; }
    }
    roots.push_back(0.5 * (a + b));
  }
  if (hs[samples] == 0.0) roots.push_back(thi);
  if (roots.empty()) roots.push_back(std::fabs(hs[0]) <= std::fabs(hs[samples]) ? tlo : thi);
  for (auto& r : roots) r = r * r;
  return roots;
}

}  // namespace

std::vector<BlochBranch> bloch_eigenvalues(const DispersionKind& kind, const std::vector<double>& thetas, int count,
                                           double lambda_cap, const ScanOptions& opts) {
  kind.validate();
  if (count < 1) throw InvalidArgument("count must be at least 1");
  std::vector<double> th;
  for (double t : thetas) th.push_back(normalize_theta(t));
  double ceiling = std::pow(std::numbers::pi * (count + 1.5) / (kind.beta - kind.alpha), 2);
  if (kind.type == DispersionKind::Type::KappaLimit) ceiling += kind.kappa * kind.kappa;
  while (true) {
    ceiling = std::min(ceiling, lambda_cap);
    BandStructure bs = band_structure(kind, ceiling, opts);
    std::size_t complete = bs.bands.size();
    if (complete > 0 && bs.bands.back().hi >= ceiling) --complete;
    if (static_cast<int>(complete) >= count) {
      std::vector<BlochBranch> out;
      for (double theta : th) {
        const double c = std::cos(2.0 * std::numbers::pi * theta);
        BlochBranch br{theta, {}};
        for (std::size_t k = 0; k < complete && static_cast<int>(br.eigenvalues.size()) < count; ++k) {
          for (double r : band_roots(kind, bs.bands[k].lo, bs.bands[k].hi, c))
            if (static_cast<int>(br.eigenvalues.size()) < count) br.eigenvalues.push_back(r);
        }
        std::sort(br.eigenvalues.begin(), br.eigenvalues.end());
        out.push_back(std::move(br));
      }
      return out;
    }
    if (ceiling >= lambda_cap) throw InsufficientRange("fewer than count bands below the scan cap");
    ceiling *= 4.0;
  }
}

BlochBranch bloch_eigenvalues(const DispersionKind& kind, double theta, int count, double lambda_cap,
                              const ScanOptions& opts) {
  return bloch_eigenvalues(kind, std::vector<double>{theta}, count, lambda_cap, opts).front();
}

std::vector<CurvePoint> lhs_curve(const DispersionKind& kind, double t_max, std::size_t points) {
  kind.validate();
  if (points < 2) throw InvalidArgument("need at least 2 curve points");
  std::vector<CurvePoint> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    double t = t_max * static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = {t, kind.lhs_t(t)};
  }
  return out;
}

}  // namespace hcs
