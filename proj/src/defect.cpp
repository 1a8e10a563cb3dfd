// SPDX-License-Identifier: Apache-2.0
#include "hcspec/defect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "hcspec/errors.hpp"
#include "hcspec/transfer.hpp"

namespace hcs {

std::vector<double> asymptotic_defect_eigenvalues(double p_d, double i_d_length, int j_max) {
  if (!(p_d > 0.0) || !(i_d_length > 0.0) || j_max < 1)
    throw InvalidArgument("asymptotic_defect_eigenvalues needs positive inputs");
  std::vector<double> out;
  const double k = std::numbers::pi / i_d_length;
  for (int j = 1; j <= j_max; ++j) out.push_back(p_d * k * k * j * j);
  return out;
}

double host_period(const CoefficientProfile& profile) {
  std::vector<double> len;
  for (const auto& s : profile.segments())
    if (s.label != Material::Defect) len.push_back(s.length);
  if (len.empty()) return profile.length();
  std::nth_element(len.begin(), len.begin() + len.size() / 2, len.end());
  return 2.0 * len[len.size() / 2];
}

DecayFit decay_rate(const EigenSolution& solution, const DefectSpec& defect, double skip, double window) {
  const auto& x = solution.grid;
  const auto& u = solution.values;
  if (x.size() != u.size()) throw InvalidArgument("grid and values differ in size");
  if (skip < 0.0) throw InvalidArgument("skip must be non-negative");
  if (!(window > 0.0)) {
    double far = 0.0;
    for (double xi : x) far = std::max(far, defect.distance(xi));
    window = (far - skip) / 64.0;
    if (!(window > 0.0)) throw InsufficientSamples("no samples outside the defect");
  }
  // side (−1 left, +1 right) and window index → (distance, max |u|)
  std::map<std::pair<int, long>, std::pair<double, double>> env;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (defect.contains(x[i])) continue;
    const double dist = defect.distance(x[i]);
    if (dist < skip) continue;
    const double a = std::fabs(u[i]);
    if (!(a > 0.0)) continue;
    const auto key = std::make_pair(x[i] < defect.c ? -1 : 1, static_cast<long>(std::floor((dist - skip) / window)));
    auto it = env.find(key);
    if (it == env.end() || a > it->second.second) env[key] = {dist, a};
  }
  // Drop windows cut short by the end of the domain: their maxima are not envelope values.
  double reach[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!defect.contains(x[i])) {
      double& r = reach[x[i] < defect.c ? 0 : 1];
      r = std::max(r, defect.distance(x[i]));
    }
  std::erase_if(env, [&](const auto& kv) {
    const double r = reach[kv.first.first < 0 ? 0 : 1];
    return skip + static_cast<double>(kv.first.second + 1) * window > r * (1.0 + 1e-12) + 1e-15;
  });
  DecayFit fit;
  fit.points = env.size();
  if (env.size() < 5) throw InsufficientSamples("fewer than 5 envelope points");
  double sx = 0, sy = 0;
  for (const auto& [k, p] : env) {
    sx += p.first;
    sy += std::log(p.second);
  }
  const double nn = static_cast<double>(env.size());
  const double mx = sx / nn, my = sy / nn;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [k, p] : env) {
    const double dx = p.first - mx, dy = std::log(p.second) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw InsufficientSamples("envelope points share one distance");
  const double slope = sxy / sxx;
  fit.rate = -slope;
  // A flat envelope carries no exponential: report no fit.
  const double scale = std::max(1.0, my * my) * nn;
  fit.fit_quality = syy > 1e-20 * scale ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 0.0;
  return fit;
}

int interior_sign_changes(const EigenSolution& solution, const DefectSpec& defect, double tol) {
  double umax = 0.0;
  for (double v : solution.values) umax = std::max(umax, std::fabs(v));
  int changes = 0, last = 0;
  for (std::size_t i = 0; i < solution.grid.size(); ++i) {
    const double xi = solution.grid[i];
    if (!(xi > defect.c && xi < defect.d)) continue;
    const double v = solution.values[i];
    if (std::fabs(v) <= tol * umax) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<DefectReport> find_trapped_modes(const CoefficientProfile& profile, BoundaryKind bc,
                                             const BandStructure& reference_bands, const DefectSpec& defect,
                                             const TrappedModeOptions& opts) {
  if (!(opts.collar >= 0.0 && opts.collar < 0.5)) throw InvalidArgument("collar must lie in [0, 0.5)");
  const double lmax = reference_bands.lambda_max;
  int j_max = 1;
  {
    const double k = std::numbers::pi / defect.length();
    const double base = defect.p_d * k * k;
    while (base * (j_max + 1) * (j_max + 1) <= lmax) ++j_max;
  }
  const auto asym = asymptotic_defect_eigenvalues(defect.p_d, defect.length(), j_max);
  const int offset = reference_bands.zero_frequency_gap() ? 0 : 1;
  const double period = host_period(profile);

  TransferOptions topts;
  topts.wave = opts.wave;
  topts.bisection = opts.bisection;
  EigenfunctionOptions eopts;
  eopts.wave = opts.wave;

  std::vector<DefectReport> out;
  for (std::size_t g = 0; g < reference_bands.gaps.size(); ++g) {
    const auto& gap = reference_bands.gaps[g];
    if (gap.degenerate || !(gap.hi > gap.lo)) continue;
    const double w = gap.hi - gap.lo;
    const Window win{gap.lo + opts.collar * w, gap.hi - opts.collar * w};
    const auto found = eigenvalues_in(profile, bc, win, topts);

    std::vector<double> in_gap;
    for (double a : asym)
      if (a > gap.lo && a < gap.hi) in_gap.push_back(a);
    std::vector<int> nearest(found.size(), -1);
    std::vector<int> claims(in_gap.size(), 0);
    for (std::size_t i = 0; i < found.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < in_gap.size(); ++k) {
        const double dd = std::fabs(found[i].lambda - in_gap[k]);
        if (dd < best) {
          best = dd;
          nearest[i] = static_cast<int>(k);
        }
      }
      if (nearest[i] >= 0) ++claims[static_cast<std::size_t>(nearest[i])];
    }

    for (std::size_t i = 0; i < found.size(); ++i) {
      DefectReport r;
      r.gap_index = static_cast<int>(g) + offset;
      r.gap_lo = gap.lo;
      r.gap_hi = gap.hi;
      r.trapped_lambda = found[i].lambda;
      r.bc = bc;
      r.n = opts.n;
      r.relative_offset = std::numeric_limits<double>::quiet_NaN();
      if (nearest[i] >= 0) {
        const auto k = static_cast<std::size_t>(nearest[i]);
        if (claims[k] == 1) {
          r.asymptotic_lambda = in_gap[k];
          r.relative_offset = (r.trapped_lambda - in_gap[k]) / in_gap[k];
        } else {
          r.warning = "ambiguous pairing: several trapped modes nearest to one asymptotic value";
        }
      }
      if (found[i].multiplicity > 1) r.warning += (r.warning.empty() ? "" : "; ") + std::string("multiple eigenvalue");
      if (opts.fit_decay) {
        try {
          const auto sol = eigenfunction(profile, bc, r.trapped_lambda, eopts);
          const auto fit = decay_rate(sol, defect, opts.skip, period);
          r.decay_rate = fit.rate;
          r.fit_quality = fit.fit_quality;
        } catch (const InsufficientSamples& e) {
          r.warning += (r.warning.empty() ? "" : "; ") + std::string(e.what());
        }
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace hcs
