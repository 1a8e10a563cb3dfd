// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hcspec/rational.hpp"

namespace hcs {

enum class Material { Stiff, Soft, Defect };

std::string to_string(Material m);
Material material_from_string(const std::string& s);

struct Segment {
  double length = 0.0;
  double q = 1.0;
  double r = 0.0;
  double m = 1.0;
  Material label = Material::Stiff;
  std::optional<Rational> exact_length;
};

struct Coefficients {
  double q, r, m;
};

// Cell Q = [0,1) with soft component (alpha, beta).
struct CellSpec {
  double alpha = 0.25;
  double beta = 0.75;
  double p_stiff = 1.0;
  double p_soft = 1.0;

  void validate() const;  // throws InvalidCell
  double stiff_measure() const { return 1.0 - beta + alpha; }
};

struct DefectSpec {
  double c = 0.25;
  double d = 0.75;
  double p_d = 2.0;

  double length() const { return d - c; }
  double distance(double x) const;  // dist(x, [c, d])
  bool contains(double x) const { return x >= c && x <= d; }
};

// Piecewise-constant medium on [a, b]. Immutable once built.
class CoefficientProfile {
 public:
  // Validates and merges adjacent segments with equal (q, r, m, label).
  explicit CoefficientProfile(std::vector<Segment> segments, double origin = 0.0,
                              std::optional<Rational> exact_origin = std::nullopt);

  double origin() const { return breakpoints_.front(); }
  double end() const { return breakpoints_.back(); }
  double length() const { return end() - origin(); }
  std::size_t size() const { return segments_.size(); }
  const std::vector<Segment>& segments() const { return segments_; }
  const Segment& segment(std::size_t i) const { return segments_[i]; }
  // size()+1 entries, exact where every length is exact.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::optional<Rational>& exact_origin() const { return exact_origin_; }
  bool exact() const { return exact_; }
  std::optional<Rational> exact_breakpoint(std::size_t i) const;

  // Segment containing x with the right-limit convention at interior breakpoints.
  std::size_t locate(double x) const;
  Coefficients at(double x) const;

 private:
  std::vector<Segment> segments_;
  std::vector<double> breakpoints_;
  std::optional<Rational> exact_origin_;
  bool exact_ = false;
};

// Continued-fraction recovery of a small fraction that round-trips to x exactly.
std::optional<Rational> rational_from_double(double x, std::int64_t max_den = std::int64_t(1) << 40);

CoefficientProfile build_periodic_medium(const CellSpec& cell, double eps, int n_periods,
                                         double origin = 0.0);
// One period rescaled to unit length: q = eps²·p_soft on (alpha, beta), p_stiff elsewhere.
CoefficientProfile build_rescaled_cell(const CellSpec& cell, double eps);
// n periods of length 1/(4n) left and right of the defect interval (c, d) ⊂ (0, 1).
CoefficientProfile build_paper_defect_medium(int n, double p_d = 2.0, Rational c = Rational(1, 4),
                                             Rational d = Rational(3, 4));
// Same medium with the defect removed (the periodic reference).
CoefficientProfile build_paper_reference_medium(int n);

Coefficients coefficient_at(const CoefficientProfile& profile, double x);
double soft_measure(const CoefficientProfile& profile);

}  // namespace hcs
