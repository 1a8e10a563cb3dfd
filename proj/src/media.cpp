// SPDX-License-Identifier: Apache-2.0
#include "hcspec/media.hpp"

#include <algorithm>
#include <cmath>

#include "hcspec/errors.hpp"

namespace hcs {

std::string to_string(Material m) {
  switch (m) {
    case Material::Stiff: return "stiff";
    case Material::Soft: return "soft";
    case Material::Defect: return "defect";
  }
  return "stiff";
}

Material material_from_string(const std::string& s) {
  if (s == "stiff") return Material::Stiff;
  if (s == "soft") return Material::Soft;
  if (s == "defect") return Material::Defect;
  throw InvalidProfile("unknown segment label '" + s + "'");
}

void CellSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidCell("alpha must lie in (0,1)");
  if (!(beta > alpha && beta < 1.0)) throw InvalidCell("beta must lie in (alpha,1)");
  if (!(p_stiff > 0.0) || !(p_soft > 0.0)) throw InvalidCell("p values must be positive");
}

double DefectSpec::distance(double x) const {
  if (x < c) return c - x;
  if (x > d) return x - d;
  return 0.0;
}

std::optional<Rational> rational_from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h/k of the continued fraction of x.
  __int128 h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  long double r = x;
  for (int it = 0; it < 64; ++it) {
    long double a = std::floor(r);
    if (std::fabs(a) > 9.0e18L) return std::nullopt;
    __int128 ai = static_cast<__int128>(a);
    __int128 h2 = ai * h1 + h0;
    __int128 k2 = ai * k1 + k0;
    if (k2 > max_den) return std::nullopt;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (static_cast<double>(static_cast<long double>(h1) / static_cast<long double>(k1)) == x &&
        static_cast<double>(h1) / static_cast<double>(k1) == x) {
      return Rational(static_cast<std::int64_t>(h1), static_cast<std::int64_t>(k1));
    }
    long double frac = r - a;
    if (frac == 0.0L) return std::nullopt;
    r = 1.0L / frac;
  }
  return std::nullopt;
}

CoefficientProfile::CoefficientProfile(std::vector<Segment> segments, double origin,
                                       std::optional<Rational> exact_origin) {
  if (segments.empty()) throw InvalidProfile("profile needs at least one segment");
  if (!std::isfinite(origin)) throw InvalidProfile("origin must be finite");
  for (const auto& s : segments) {
    if (!(s.length > 0.0) || !std::isfinite(s.length)) throw InvalidProfile("segment length must be positive");
    if (!(s.q > 0.0) || !std::isfinite(s.q)) throw InvalidProfile("segment q must be positive");
    if (!(s.m > 0.0) || !std::isfinite(s.m)) throw InvalidProfile("segment m must be positive");
    if (!(s.r >= 0.0) || !std::isfinite(s.r)) throw InvalidProfile("segment r must be nonnegative");
    if (s.exact_length && !(*s.exact_length > Rational(0))) throw InvalidProfile("exact length must be positive");
  }
  if (segments.front().label == Material::Soft || segments.back().label == Material::Soft)
    throw InvalidProfile("profile must start and end in stiff or defect material");

  for (auto& s : segments) {
    if (s.exact_length) s.length = s.exact_length->to_double();
    if (segments_.empty()) {
      segments_.push_back(s);
      continue;
    }
    Segment& last = segments_.back();
    if (last.q == s.q && last.r == s.r && last.m == s.m && last.label == s.label) {
      if (last.exact_length && s.exact_length) {
        last.exact_length = *last.exact_length + *s.exact_length;
        last.length = last.exact_length->to_double();
      } else {
        last.exact_length.reset();
        last.length += s.length;
      }
    } else {
      segments_.push_back(s);
    }
  }

  if (!exact_origin) exact_origin = rational_from_double(origin);
  exact_origin_ = exact_origin;
  exact_ = exact_origin_.has_value() &&
           std::all_of(segments_.begin(), segments_.end(), [](const Segment& s) { return s.exact_length.has_value(); });

  breakpoints_.resize(segments_.size() + 1);
  if (exact_) {
    Rational x = *exact_origin_;
    breakpoints_[0] = x.to_double();
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      x = x + *segments_[i].exact_length;
      breakpoints_[i + 1] = x.to_double();
    }
  } else {
    // Compensated summation keeps the drift at the rounding level.
    double sum = origin, comp = 0.0;
    breakpoints_[0] = origin;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      double y = segments_[i].length - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      breakpoints_[i + 1] = sum;
    }
  }
}

std::optional<Rational> CoefficientProfile::exact_breakpoint(std::size_t i) const {
  if (!exact_) return std::nullopt;
  Rational x = *exact_origin_;
  for (std::size_t k = 0; k < i; ++k) x = x + *segments_[k].exact_length;
  return x;
}

std::size_t CoefficientProfile::locate(double x) const {
  if (!(x >= origin() && x <= end())) throw OutOfDomain("x outside [a, b]");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
  idx = idx == 0 ? 0 : idx - 1;
  return std::min(idx, segments_.size() - 1);
}

Coefficients CoefficientProfile::at(double x) const {
  const Segment& s = segments_[locate(x)];
  return {s.q, s.r, s.m};
}

Coefficients coefficient_at(const CoefficientProfile& profile, double x) { return profile.at(x); }

double soft_measure(const CoefficientProfile& profile) {
  double total = 0.0;
  for (const auto& s : profile.segments())
    if (s.label == Material::Soft) total += s.length;
  return total;
}

namespace {

Segment piece(std::optional<Rational> exact, double length, double q, Material label) {
  Segment s;
  s.exact_length = exact;
  s.length = exact ? exact->to_double() : length;
  s.q = q;
  s.label = label;
  return s;
}

void append_period(std::vector<Segment>& out, const CellSpec& cell, double eps,
                   const std::optional<Rational>& a, const std::optional<Rational>& b,
                   const std::optional<Rational>& e) {
  const bool exact = a && b && e;
  auto part = [&](Rational lo, Rational hi) { return std::optional<Rational>((hi - lo) * *e); };
  out.push_back(piece(exact ? part(Rational(0), *a) : std::nullopt, cell.alpha * eps, cell.p_stiff, Material::Stiff));
  out.push_back(piece(exact ? part(*a, *b) : std::nullopt, (cell.beta - cell.alpha) * eps,
                      eps * eps * cell.p_soft, Material::Soft));
  out.push_back(piece(exact ? part(*b, Rational(1)) : std::nullopt, (1.0 - cell.beta) * eps, cell.p_stiff,
                      Material::Stiff));
}

}  // namespace

CoefficientProfile build_periodic_medium(const CellSpec& cell, double eps, int n_periods, double origin) {
  cell.validate();
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be positive");
  if (n_periods < 1) throw InvalidArgument("n_periods must be at least 1");
  auto a = rational_from_double(cell.alpha, 1 << 20);
  auto b = rational_from_double(cell.beta, 1 << 20);
  auto e = rational_from_double(eps, 1 << 24);
  std::vector<Segment> segs;
  segs.reserve(3 * static_cast<std::size_t>(n_periods));
  for (int k = 0; k < n_periods; ++k) append_period(segs, cell, eps, a, b, e);
  return CoefficientProfile(std::move(segs), origin);
}

CoefficientProfile build_rescaled_cell(const CellSpec& cell, double eps) {
  cell.validate();
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  std::vector<Segment> segs;
  segs.push_back(piece(std::nullopt, cell.alpha, cell.p_stiff, Material::Stiff));
  segs.push_back(piece(std::nullopt, cell.beta - cell.alpha, eps * eps * cell.p_soft, Material::Soft));
  segs.push_back(piece(std::nullopt, 1.0 - cell.beta, cell.p_stiff, Material::Stiff));
  return CoefficientProfile(std::move(segs), 0.0, Rational(0));
}

namespace {

std::vector<Segment> host_periods(int count, Rational period) {
  CellSpec cell;  // alpha=1/4, beta=3/4, p=1
  std::vector<Segment> segs;
  for (int k = 0; k < count; ++k)
    append_period(segs, cell, period.to_double(), Rational(1, 4), Rational(3, 4), period);
  return segs;
}

}  // namespace

CoefficientProfile build_paper_defect_medium(int n, double p_d, Rational c, Rational d) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (!(p_d > 0.0) || !std::isfinite(p_d)) throw InvalidDefect("p_d must be positive");
  if (!(Rational(0) < c && c < d && d < Rational(1))) throw InvalidDefect("defect interval must satisfy 0 < c < d < 1");
  const Rational period(1, 4 * static_cast<std::int64_t>(n));
  Rational left = c / period, right = (Rational(1) - d) / period;
  if (left.den() != 1 || right.den() != 1)
    throw InvalidDefect("defect endpoints must lie on the period grid k/(4n)");
  auto segs = host_periods(static_cast<int>(left.num()), period);
  Segment def = piece(d - c, 0.0, p_d, Material::Defect);
  segs.push_back(def);
  auto rhs = host_periods(static_cast<int>(right.num()), period);
  segs.insert(segs.end(), rhs.begin(), rhs.end());
  return CoefficientProfile(std::move(segs), 0.0, Rational(0));
}

CoefficientProfile build_paper_reference_medium(int n) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  return CoefficientProfile(host_periods(4 * n, Rational(1, 4 * static_cast<std::int64_t>(n))), 0.0, Rational(0));
}

}  // namespace hcs
