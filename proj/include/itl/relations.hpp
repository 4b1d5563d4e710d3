#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "itl/measurable.hpp"
#include "itl/omega_set.hpp"
#include "itl/partition.hpp"
#include "itl/stream.hpp"
#include "itl/verdict.hpp"

namespace itl {

/// Bound on |[f(n), f(n+1)) ∩ X|.
struct ThresholdSpec {
  struct Const { Nat k; };
  struct Identity {};
  struct Fn { UpStream g; };
  struct BoundedExistential {};
  std::variant<Const, Identity, Fn, BoundedExistential> rep;

  static ThresholdSpec constant(Nat k) { return {Const{k}}; }
  static ThresholdSpec identity() { return {Identity{}}; }
  static ThresholdSpec fn(UpStream g) { return {Fn{std::move(g)}}; }
  static ThresholdSpec bounded() { return {BoundedExistential{}}; }
};

/// Rational sequence tending to zero: prefix values, then scale * ratio^j.
struct EpsSequence {
  std::vector<Rational> prefix;
  Rational scale;
  Rational ratio;  // in [0, 1)

  Rational at(Nat n) const;
  void validate() const;
};

struct MeasureThreshold {
  struct ConstEps { Rational eps; };
  struct VecEps { EpsSequence eps; };
  struct Sum {};
  std::variant<ConstEps, VecEps, Sum> rep;

  static MeasureThreshold constant(Rational eps) { return {ConstEps{std::move(eps)}}; }
  static MeasureThreshold vec(EpsSequence e) { return {VecEps{std::move(e)}}; }
  static MeasureThreshold sum() { return {Sum{}}; }
};

/// How far evaluators scan when they cannot decide exactly.
struct EvalPolicy {
  Nat horizon = 4096;
};

Verdict eval_count_relation(const UpStream& f, const OmegaSet& x, const ThresholdSpec& t, Quant q,
                            const EvalPolicy& policy = {});
/// Number of distinct blocks of P meeting each f-interval is at most k.
Verdict eval_colored_relation(const UpStream& f, const Partition& p, Nat k, Quant q, const EvalPolicy& policy = {});
/// Every late g-interval contains some f-interval.
Verdict eval_blass_inclusion(const UpStream& f, const UpStream& g, const EvalPolicy& policy = {});
/// f(n) <= g(n) for all but finitely many n.
Verdict eval_leq_star(const UpStream& f, const UpStream& g, const EvalPolicy& policy = {});
Verdict eval_measure_relation(const UpStream& f, const MeasurableSet& y, const MeasureThreshold& t, Quant q,
                              const EvalPolicy& policy = {});

/// Sign of a quasi-quadratic sequence for all large n (q = Forall) or infinitely often (q = Exists).
bool eventually_nonneg(const QuasiForm& d, Quant q);
/// Pointwise difference a - b over the common period.
QuasiForm form_difference(const QuasiForm& a, const QuasiForm& b);

/// Stable relation identifiers.
const std::vector<std::string>& relation_ids();
bool is_relation_id(const std::string& id);

}  // namespace itl
