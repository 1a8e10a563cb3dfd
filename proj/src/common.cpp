// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "hcspec/errors.hpp"
#include "hcspec/types.hpp"

namespace hcs {

std::string to_string(BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::Dirichlet: return "dirichlet";
    case BoundaryKind::Neumann: return "neumann";
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Antiperiodic: return "antiperiodic";
  }
  return "dirichlet";
}

std::string to_string(Polarization p) { return p == Polarization::TE ? "te" : "tm"; }
std::string to_string(SolverKind s) { return s == SolverKind::Transfer ? "transfer" : "fem"; }

BoundaryKind boundary_from_string(const std::string& s) {
  if (s == "dirichlet") return BoundaryKind::Dirichlet;
  if (s == "neumann") return BoundaryKind::Neumann;
  if (s == "periodic") return BoundaryKind::Periodic;
  if (s == "antiperiodic") return BoundaryKind::Antiperiodic;
  throw InvalidArgument("unknown boundary condition '" + s + "'");
}

Polarization polarization_from_string(const std::string& s) {
  if (s == "te" || s == "TE") return Polarization::TE;
  if (s == "tm" || s == "TM") return Polarization::TM;
  throw InvalidArgument("unknown polarization '" + s + "'");
}

EffectiveCoefficients effective(const Segment& seg, const WaveParams& wave) {
  const double k2 = wave.kappa * wave.kappa;
  if (wave.polarization == Polarization::TE) return {seg.q, seg.r + k2 * seg.q, seg.m};
  return {1.0, seg.r + k2, seg.m / seg.q};
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace {

void bisect_rec(const std::function<std::size_t(double)>& count, double a, double b, std::size_t ca, std::size_t cb,
                const BisectionOptions& opts, std::vector<Bracket>& out) {
  while (true) {
    if (cb == ca) return;
    double tol = std::max(opts.rtol * std::max(std::fabs(a), std::fabs(b)), opts.atol);
    double mid = 0.5 * (a + b);
    if (b - a <= tol || !(mid > a && mid < b)) {
      out.push_back({a, b, static_cast<int>(cb - ca)});
      return;
    }
    std::size_t cm = count(mid);
    cm = std::clamp(cm, ca, cb);
    // Recurse on the left half, iterate on the right to bound stack depth.
    bisect_rec(count, a, mid, ca, cm, opts, out);
    a = mid;
    ca = cm;
  }
}

}  // namespace

std::vector<Bracket> bisect_spectrum(const std::function<std::size_t(double)>& count_below, Window window,
                                     const BisectionOptions& opts) {
  if (!(window.hi > window.lo)) throw InvalidArgument("window must satisfy lo < hi");
  unsigned threads = std::max(1u, opts.threads);
  std::vector<double> cuts(threads + 1);
  for (unsigned i = 0; i <= threads; ++i)
    cuts[i] = i == threads ? window.hi : window.lo + (window.hi - window.lo) * i / threads;
  std::vector<std::size_t> counts(threads + 1);
  if (threads == 1) {
    counts[0] = count_below(cuts[0]);
    counts[1] = count_below(cuts[1]);
  } else {
    std::vector<std::future<std::size_t>> fs;
    for (unsigned i = 0; i <= threads; ++i) fs.push_back(std::async(std::launch::async, count_below, cuts[i]));
    for (unsigned i = 0; i <= threads; ++i) counts[i] = fs[i].get();
  }
  if (counts.back() < counts.front()) throw NoConvergence("eigenvalue count is not monotone");
  if (counts.back() - counts.front() > opts.max_count)
    throw WindowTooWide("window holds " + std::to_string(counts.back() - counts.front()) + " eigenvalues");
  for (unsigned i = 1; i <= threads; ++i) counts[i] = std::max(counts[i], counts[i - 1]);

  std::vector<std::vector<Bracket>> parts(threads);
  if (threads == 1) {
    bisect_rec(count_below, cuts[0], cuts[1], counts[0], counts[1], opts, parts[0]);
  } else {
    std::vector<std::future<void>> fs;
    for (unsigned i = 0; i < threads; ++i)
      fs.push_back(std::async(std::launch::async, [&, i] {
        bisect_rec(count_below, cuts[i], cuts[i + 1], counts[i], counts[i + 1], opts, parts[i]);
      }));
    for (auto& f : fs) f.get();
  }
  std::vector<Bracket> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

double trapezoid_norm2(const std::vector<double>& x, const std::vector<double>& u) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += 0.5 * (x[i + 1] - x[i]) * (u[i] * u[i] + u[i + 1] * u[i + 1]);
  return s;
}

}  // namespace hcs
