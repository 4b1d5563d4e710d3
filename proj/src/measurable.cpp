#include "itl/measurable.hpp"

#include <algorithm>

#include "itl/error.hpp"

namespace itl {

namespace {

void check_family(const std::vector<RInterval>& v, const Rational& bound, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].lo < 0 || v[i].hi > bound) throw MalformedSpec(std::string(what) + " interval outside its range");
    if (!(v[i].lo < v[i].hi)) throw MalformedSpec(std::string(what) + " interval is empty");
    if (i > 0 && v[i].lo < v[i - 1].hi) throw MalformedSpec(std::string(what) + " intervals overlap");
  }
}

Rational overlap_below(const std::vector<RInterval>& v, const Rational& x) {
  Rational total(0);
  for (const auto& iv : v) {
    if (x <= iv.lo) break;
    total += (x < iv.hi ? x : iv.hi) - iv.lo;
  }
  return total;
}

}  // namespace

std::vector<RInterval> normalize_intervals(std::vector<RInterval> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  std::vector<RInterval> out;
  for (auto& iv : v) {
    if (!(iv.lo < iv.hi)) continue;
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (out.back().hi < iv.hi) out.back().hi = iv.hi;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

MeasurableSet MeasurableSet::make(std::vector<RInterval> prefix, std::vector<RInterval> motif, Rational p0,
                                  Rational period) {
  if (p0 < 0) throw MalformedSpec("p0 must be nonnegative");
  if (!(period > 0)) throw MalformedSpec("motif period must be positive");
  std::sort(prefix.begin(), prefix.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  std::sort(motif.begin(), motif.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  check_family(prefix, p0, "prefix");
  check_family(motif, period, "motif");
  MeasurableSet y;
  y.motif_measure_ = overlap_below(motif, period);
  if (!(y.motif_measure_ > 0)) throw MalformedSpec("motif has zero measure");
  y.prefix_ = std::move(prefix);
  y.motif_ = std::move(motif);
  y.p0_ = std::move(p0);
  y.period_ = std::move(period);
  return y;
}

bool MeasurableSet::contains(const Rational& x) const {
  if (x < 0) return false;
  const auto& fam = x < p0_ ? prefix_ : motif_;
  Rational t = x < p0_ ? x : mod(x - p0_, period_);
  return std::any_of(fam.begin(), fam.end(), [&](const auto& iv) { return iv.lo <= t && t < iv.hi; });
}

Rational MeasurableSet::measure_below(const Rational& x) const {
  if (x <= 0) return Rational(0);
  if (x <= p0_) return overlap_below(prefix_, x);
  Rational total = overlap_below(prefix_, p0_);
  Rational t = x - p0_;
  Rational full(floor(t / period_));
  total += full * motif_measure_;
  total += overlap_below(motif_, t - full * period_);
  return total;
}

Rational MeasurableSet::measure_in(const Rational& a, const Rational& b) const {
  if (b <= a) return Rational(0);
  return measure_below(b) - measure_below(a);
}

std::string MeasurableSet::to_string() const {
  auto fam = [](const std::vector<RInterval>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += "[" + format_rational(v[i].lo) + "," + format_rational(v[i].hi) + ")";
    }
    return s + "}";
  };
  return fam(prefix_) + " + (" + fam(motif_) + " mod " + format_rational(period_) + " from " + format_rational(p0_) + ")";
}

}  // namespace itl
