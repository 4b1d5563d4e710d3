#pragma once

#include <string>
#include <vector>

#include "itl/rational.hpp"

namespace itl {

/// Half-open rational interval [lo, hi).
struct RInterval {
  Rational lo;
  Rational hi;
  bool operator==(const RInterval&) const = default;
};

/// prefix ∪ ⋃_{j≥0} (p0 + j·L + motif): a subset of the half-line of infinite measure.
class MeasurableSet {
 public:
  static MeasurableSet make(std::vector<RInterval> prefix, std::vector<RInterval> motif, Rational p0, Rational period);
  static MeasurableSet half_line() { return make({}, {{Rational(0), Rational(1)}}, Rational(0), Rational(1)); }

  const std::vector<RInterval>& prefix() const { return prefix_; }
  const std::vector<RInterval>& motif() const { return motif_; }
  const Rational& p0() const { return p0_; }
  const Rational& period() const { return period_; }
  const Rational& motif_measure() const { return motif_measure_; }

  bool contains(const Rational& x) const;
  /// μ([0, x) ∩ Y)
  Rational measure_below(const Rational& x) const;
  /// μ([a, b) ∩ Y)
  Rational measure_in(const Rational& a, const Rational& b) const;

  std::string to_string() const;

 private:
  std::vector<RInterval> prefix_;
  std::vector<RInterval> motif_;
  Rational p0_;
  Rational period_;
  Rational motif_measure_;
};

/// Sorts and fuses overlapping or touching intervals.
std::vector<RInterval> normalize_intervals(std::vector<RInterval> v);

}  // namespace itl
