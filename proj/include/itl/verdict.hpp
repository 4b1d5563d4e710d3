#pragma once

#include <string>
#include <vector>

#include "itl/rational.hpp"
#include "itl/stream.hpp"

namespace itl {

/// Truth value of an asymptotic relation.
///
/// True/False are certain. Unknown records the horizon scanned and the evidence found:
/// violations for "for all but finitely many" goals, witnesses for "infinitely many" goals.
/// For the bounded-existential relations a True verdict carries the least k in `evidence`.
struct Verdict {
  Tri value = Tri::Unknown;
  Nat horizon = 0;
  Nat evidence = 0;
  std::vector<std::string> warnings;

  static Verdict yes(Nat evidence = 0) { return {Tri::True, 0, evidence, {}}; }
  static Verdict no() { return {Tri::False, 0, 0, {}}; }
  static Verdict of(bool b) { return b ? yes() : no(); }
  static Verdict unknown(Nat horizon, Nat evidence) { return {Tri::Unknown, horizon, evidence, {}}; }

  bool is_true() const { return value == Tri::True; }
  bool is_false() const { return value == Tri::False; }
  bool is_unknown() const { return value == Tri::Unknown; }

  /// Logical negation; Unknown stays Unknown and keeps its data.
  Verdict negated() const;
  std::string to_string() const;
};

enum class Quant { Forall, Exists };
const char* to_string(Quant q);

}  // namespace itl
