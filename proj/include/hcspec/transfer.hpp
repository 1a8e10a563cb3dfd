// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "hcspec/media.hpp"
#include "hcspec/types.hpp"

namespace hcs {

// Real number stored as mantissa·exp(log_scale); the sign is always exact.
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double value() const;  // may be ±inf
  int sign() const { return (mantissa > 0.0) - (mantissa < 0.0); }
};

// Unimodular 2×2 matrix acting on (u, q·u'), kept as Q·R with Q a rotation and
// R = [[e^x, e^x·rho], [0, e^-x]] so that products never overflow and det = 1 by construction.
class TransferMatrix {
 public:
  TransferMatrix() = default;  // identity
  // Normalizes a real matrix with positive determinant to unit determinant if requested.
  static TransferMatrix from_entries(double t11, double t12, double t21, double t22);

  // this ← e^scale·B·this for a bounded 2×2 factor B = {b11, b12, b21, b22} with det(e^scale·B) = 1.
  void left_multiply(const std::array<double, 4>& b, double scale = 0.0);
  friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b);

  // M = exp(log_scale)·mantissa, entries {t11, t12, t21, t22}, max |mantissa entry| ≈ 1.
  double log_scale() const;
  std::array<double, 4> mantissa() const;
  std::array<double, 4> entries() const;  // may overflow to ±inf
  double t11() const { return entries()[0]; }
  double t12() const { return entries()[1]; }
  double t21() const { return entries()[2]; }
  double t22() const { return entries()[3]; }

  double det() const;  // from the factors: det(Q) = 1 up to rounding
  double entry_det() const;  // t11·t22 − t12·t21 from the entries; meaningful for moderate scale
  ScaledValue trace_shifted(double shift) const;  // trace + shift
  ScaledValue entry(int i, int j) const;
  double half_trace() const;

 private:
  double q_[4] = {1.0, 0.0, 0.0, 1.0};
  double x_ = 0.0;
  double rho_ = 0.0;
};

struct SegmentFactor {
  std::array<double, 4> b;
  double scale;
};
// Closed-form segment matrix split into a bounded factor and a log scale.
SegmentFactor segment_factor(double length, const EffectiveCoefficients& c, double lambda);
// Partial propagation through `length` of a segment with coefficients c.
SegmentFactor segment_factor_inverse(double length, const EffectiveCoefficients& c, double lambda);

TransferMatrix segment_transfer(const Segment& seg, double lambda, const WaveParams& wave = {});
TransferMatrix propagate(const CoefficientProfile& profile, double lambda, const WaveParams& wave = {});
double monodromy_half_trace(const CoefficientProfile& cell_profile, double lambda, const WaveParams& wave = {});

ScaledValue characteristic(const CoefficientProfile& profile, double lambda, BoundaryKind bc,
                           const WaveParams& wave = {});

// Prüfer angle φ = atan2(u, q u') at b when started at φ0 at a.
double prufer_angle(const CoefficientProfile& profile, double lambda, double phi0, const WaveParams& wave = {});
// Certified number of eigenvalues strictly below lambda.
std::size_t count_below(const CoefficientProfile& profile, double lambda, BoundaryKind bc,
                        const WaveParams& wave = {});

struct TransferOptions {
  WaveParams wave;
  BisectionOptions bisection;
  bool polish = true;
};

std::vector<EigenValue> eigenvalues_in(const CoefficientProfile& profile, BoundaryKind bc, Window window,
                                       const TransferOptions& opts = {});

struct EigenfunctionOptions {
  WaveParams wave;
  int samples_per_segment = 8;
  double eigen_tolerance = 1e-8;  // relative half-width of the count-jump test
};

EigenSolution eigenfunction(const CoefficientProfile& profile, BoundaryKind bc, double lambda,
                            const EigenfunctionOptions& opts = {});

}  // namespace hcs
