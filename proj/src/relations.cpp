#include "itl/relations.hpp"

#include <algorithm>
#include <cmath>

#include "itl/error.hpp"
#include "itl/profile.hpp"

namespace itl {

namespace {

constexpr Nat kMaxAnalyticPeriod = 200'000;

Nat den_of(const Rational& r) { return static_cast<Nat>(boost::multiprecision::denominator(r)); }

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

bool forms_equal(const QuasiForm& x, const QuasiForm& y) {
  if (x.a != y.a || x.b != y.b) return false;
  const Nat p = lcm(x.period(), y.period());
  for (Nat i = 0; i < p; ++i)
    if (x.c[i % x.period()] != y.c[i % y.period()]) return false;
  return true;
}

/// Count sequence n -> |[f(n), f(n+1)) ∩ X| as slope·n + periodic, for f with a quasi form and X a word.
std::optional<QuasiForm> count_form(const UpStream& f, const OmegaSet& w) {
  const auto q = f.form();
  if (!q) return std::nullopt;
  const Nat len = w.cycle_length();
  Nat period = 2 * q->period();
  for (Nat factor : {len, den_of(q->a), den_of(q->b)}) {
    period = checked_mul(period, factor);
    if (period > kMaxAnalyticPeriod) return std::nullopt;
  }
  const Rational slope = Rational(2) * q->a * Rational(w.ones_per_cycle()) / Rational(len);
  try {
    const Nat n0 = std::max(q->from, f.lower_index(w.prefix_length()));
    QuasiForm out{Rational(0), slope, std::vector<Rational>(period), n0};
    for (Nat n = n0; n < n0 + period; ++n)
      out.c[n % period] = Rational(w.count_in(f(n), f(n + 1))) - slope * Rational(n);
    return out;
  } catch (const ProgramDivergence&) {
    return std::nullopt;
  }
}

/// Counts that are eventually confined to [lo, hi], each extreme attained infinitely often.
struct SparseCounts {
  Nat lo;
  Nat hi;
};

std::optional<SparseCounts> sparse_counts(const UpStream& f, const UpStream& s) {
  // X = ran(f): each interval holds exactly its left endpoint
  if (f.same_representation(s)) return SparseCounts{1, 1};
  const auto qf = f.form();
  const auto qs = s.form();
  if (qf && qs) {
    // X = {f(m·i + c)} meets exactly the intervals with index ≡ c (mod m)
    std::optional<Nat> m;
    if (qf->a > 0) {
      const Rational r = qs->a / qf->a;
      const BigInt whole = floor(r);
      if (r == Rational(whole) && whole >= 1) {
        const Nat v = static_cast<Nat>(whole);
        const Nat root = static_cast<Nat>(std::llround(std::sqrt(static_cast<double>(v))));
        if (root * root == v) m = root;
      }
    } else if (qs->a == 0 && qf->b > 0) {
      const Rational r = qs->b / qf->b;
      if (r == Rational(floor(r)) && r >= 1) m = static_cast<Nat>(floor(r));
    }
    if (m && *m <= 4096)
      for (Nat c = 0; c < *m; ++c)
        if (forms_equal(reindex_form(*qf, *m, c), *qs)) return SparseCounts{*m == 1 ? Nat{1} : Nat{0}, 1};
    if (auto sq = squares_form(*qf); sq && forms_equal(*sq, *qs)) return SparseCounts{0, 1};
  }
  // bounded f-intervals against diverging gaps: eventually at most one point, both 0 and 1 recur
  const bool bounded_f = f.as_ep() || (qf && qf->a == 0);
  if (bounded_f && s.classify().divergent == Tri::True) return SparseCounts{0, 1};
  return std::nullopt;
}

std::optional<QuasiForm> threshold_form(const ThresholdSpec& t) {
  if (auto c = std::get_if<ThresholdSpec::Const>(&t.rep)) return QuasiForm{0, 0, {Rational(c->k)}, 0};
  if (std::holds_alternative<ThresholdSpec::Identity>(t.rep)) return QuasiForm{0, 1, {Rational(0)}, 0};
  if (auto g = std::get_if<ThresholdSpec::Fn>(&t.rep)) return g->g.form();
  return std::nullopt;
}

bool is_bounded(const ThresholdSpec& t) { return std::holds_alternative<ThresholdSpec::BoundedExistential>(t.rep); }

Verdict decide_profile(const CountProfile& p, const ThresholdSpec& t, Quant q) {
  if (is_bounded(t)) return Verdict::yes(q == Quant::Forall ? p.cycle_max() : p.cycle_min());
  if (auto c = std::get_if<ThresholdSpec::Const>(&t.rep)) {
    auto ok = [k = c->k](Nat v) { return v <= k; };
    return Verdict::of(q == Quant::Forall ? p.all_cycle(ok) : p.any_cycle(ok));
  }
  // identity and stream thresholds are unbounded while profile counts are bounded
  return Verdict::yes();
}

Verdict decide_sparse(const SparseCounts& s, const ThresholdSpec& t, Quant q) {
  const Nat bound = q == Quant::Forall ? s.hi : s.lo;
  if (is_bounded(t)) return Verdict::yes(bound);
  if (auto c = std::get_if<ThresholdSpec::Const>(&t.rep)) return Verdict::of(bound <= c->k);
  return Verdict::yes();
}

std::optional<Verdict> decide_count_form(const QuasiForm& counts, const ThresholdSpec& t, Quant q) {
  if (is_bounded(t)) {
    if (counts.b > 0) return Verdict::no();
    std::vector<Nat> vals;
    for (const auto& c : counts.c) vals.push_back(static_cast<Nat>(floor(c)));
    return Verdict::yes(q == Quant::Forall ? *std::max_element(vals.begin(), vals.end())
                                           : *std::min_element(vals.begin(), vals.end()));
  }
  auto bound = threshold_form(t);
  if (!bound) return std::nullopt;
  return Verdict::of(eventually_nonneg(form_difference(*bound, counts), q));
}

/// Scans n < horizon; `holds(n)` answers the per-index predicate.
template <class Pred>
Verdict scan(Nat horizon, Quant q, Pred holds) {
  Nat n = 0, hits = 0;
  try {
    for (; n < horizon; ++n)
      if (holds(n) == (q == Quant::Exists)) ++hits;
  } catch (const ProgramDivergence&) {
  }
  return Verdict::unknown(n, hits);
}

Rational threshold_at(const ThresholdSpec& t, Nat n) {
  if (auto c = std::get_if<ThresholdSpec::Const>(&t.rep)) return Rational(c->k);
  if (std::holds_alternative<ThresholdSpec::Identity>(t.rep)) return Rational(n);
  return Rational(std::get<ThresholdSpec::Fn>(t.rep).g(n));
}

Verdict scan_counts(const UpStream& f, const OmegaSet& x, const ThresholdSpec& t, Quant q, Nat horizon) {
  if (!is_bounded(t))
    return scan(horizon, q, [&](Nat n) { return Rational(x.count_in(f(n), f(n + 1))) <= threshold_at(t, n); });
  // report the extreme count seen over the upper half of the horizon
  Nat n = 0, best = q == Quant::Forall ? 0 : ~Nat{0};
  try {
    for (; n < horizon; ++n) {
      const Nat c = x.count_in(f(n), f(n + 1));
      if (n < horizon / 2) continue;
      best = q == Quant::Forall ? std::max(best, c) : std::min(best, c);
    }
  } catch (const ProgramDivergence&) {
  }
  return Verdict::unknown(n, best == ~Nat{0} ? 0 : best);
}

}  // namespace

Rational EpsSequence::at(Nat n) const {
  if (n < prefix.size()) return prefix[n];
  Rational v = scale;
  for (Nat j = prefix.size(); j < n && v != 0; ++j) v *= ratio;
  return v;
}

void EpsSequence::validate() const {
  for (const auto& v : prefix)
    if (v < 0) throw MalformedSpec("eps values must be nonnegative");
  if (scale < 0) throw MalformedSpec("eps scale must be nonnegative");
  if (ratio < 0 || ratio >= 1) throw MalformedSpec("eps ratio must lie in [0, 1)");
}

QuasiForm form_difference(const QuasiForm& a, const QuasiForm& b) {
  const Nat p = lcm(a.period(), b.period());
  QuasiForm out{a.a - b.a, a.b - b.b, std::vector<Rational>(p), std::max(a.from, b.from)};
  for (Nat i = 0; i < p; ++i) out.c[i] = a.c[i % a.period()] - b.c[i % b.period()];
  return out;
}

bool eventually_nonneg(const QuasiForm& d, Quant q) {
  if (int s = sign(d.a)) return s > 0;
  if (int s = sign(d.b)) return s > 0;
  auto nonneg = [](const Rational& v) { return v >= 0; };
  return q == Quant::Forall ? std::all_of(d.c.begin(), d.c.end(), nonneg)
                            : std::any_of(d.c.begin(), d.c.end(), nonneg);
}

Verdict eval_count_relation(const UpStream& f, const OmegaSet& x, const ThresholdSpec& t, Quant q,
                            const EvalPolicy& policy) {
  std::vector<std::string> warnings;
  const auto cls = f.classify();
  if (std::holds_alternative<ThresholdSpec::Identity>(t.rep) && q == Quant::Forall && cls.gt_id != Tri::True)
    warnings.push_back("DomainViolation: f is not known to have differences greater than n");
  if (is_bounded(t) && cls.divergent != Tri::True)
    warnings.push_back("DomainViolation: f is not known to have diverging differences");

  auto finish = [&](Verdict v) {
    v.warnings = warnings;
    return v;
  };

  const auto word = x.to_word();
  if (word) {
    if (f.as_ep()) return finish(decide_profile(interval_count_profile(f, *word), t, q));
    if (auto counts = count_form(f, *word))
      if (auto v = decide_count_form(*counts, t, q)) return finish(*v);
    if (cls.divergent == Tri::True) {
      // counts grow at least like ⌊d(n)/L⌋ times the ones per cycle
      if (is_bounded(t) || std::holds_alternative<ThresholdSpec::Const>(t.rep)) return finish(Verdict::no());
      if (std::holds_alternative<ThresholdSpec::Identity>(t.rep) && cls.superlinear == Tri::True)
        return finish(Verdict::no());
    }
  } else if (const auto* s = x.as_range()) {
    if (auto sc = sparse_counts(f, *s)) return finish(decide_sparse(*sc, t, q));
  }
  return finish(scan_counts(f, x, t, q, policy.horizon));
}

Verdict eval_colored_relation(const UpStream& f, const Partition& p, Nat k, Quant q, const EvalPolicy& policy) {
  if (k == 0) throw BadParams("colored relations need k >= 1");
  if (f.as_ep()) {
    const auto prof = colored_count_profile(f, p);
    auto ok = [k](Nat v) { return v <= k; };
    return Verdict::of(q == Quant::Forall ? prof.all_cycle(ok) : prof.any_cycle(ok));
  }
  // windows have bounded length, so long intervals meet many blocks
  if (f.classify().divergent == Tri::True) return Verdict::no();
  return scan(policy.horizon, q, [&](Nat n) { return p.blocks_meeting(f(n), f(n + 1)) <= k; });
}

Verdict eval_blass_inclusion(const UpStream& f, const UpStream& g, const EvalPolicy& policy) {
  if (f.same_representation(g)) return Verdict::yes();
  if (f.as_ep() && g.as_ep()) return Verdict::of(nesting_profile(f, g).all_cycle([](Nat v) { return v == 1; }));
  if (f.as_ep() && g.classify().divergent == Tri::True) return Verdict::yes();
  if (g.as_ep() && f.classify().divergent == Tri::True) return Verdict::no();
  return scan(policy.horizon, Quant::Forall, [&](Nat n) { return nests_at(f, g, n); });
}

Verdict eval_leq_star(const UpStream& f, const UpStream& g, const EvalPolicy& policy) {
  if (f.same_representation(g)) return Verdict::yes();
  const auto qf = f.form();
  const auto qg = g.form();
  if (qf && qg) return Verdict::of(eventually_nonneg(form_difference(*qg, *qf), Quant::Forall));
  // superlinear growth outruns every quadratic
  if (qf && g.classify().superlinear == Tri::True) return Verdict::yes();
  if (qg && f.classify().superlinear == Tri::True) return Verdict::no();
  return scan(policy.horizon, Quant::Forall, [&](Nat n) { return f(n) <= g(n); });
}

Verdict eval_measure_relation(const UpStream& f, const MeasurableSet& y, const MeasureThreshold& t, Quant q,
                              const EvalPolicy& policy) {
  if (auto v = std::get_if<MeasureThreshold::VecEps>(&t.rep)) v->eps.validate();
  if (auto c = std::get_if<MeasureThreshold::ConstEps>(&t.rep); c && c->eps <= 0)
    throw BadParams("eps must be positive");

  if (f.as_ep()) {
    const auto prof = measure_profile(f, y);
    auto zero = [](const Rational& v) { return v == 0; };
    if (std::holds_alternative<MeasureThreshold::Sum>(t.rep)) return Verdict::of(prof.all_cycle(zero));
    if (std::holds_alternative<MeasureThreshold::VecEps>(t.rep))
      // eps tends to zero, so only vanishing measures stay below it
      return Verdict::of(q == Quant::Forall ? prof.all_cycle(zero) : prof.any_cycle(zero));
    const Rational& eps = std::get<MeasureThreshold::ConstEps>(t.rep).eps;
    auto ok = [&eps](const Rational& v) { return v <= eps; };
    return Verdict::of(q == Quant::Forall ? prof.all_cycle(ok) : prof.any_cycle(ok));
  }
  // the intervals tile [f(0), ∞), which has infinite measure in Y
  if (std::holds_alternative<MeasureThreshold::Sum>(t.rep)) return Verdict::no();
  if (f.classify().divergent == Tri::True) return Verdict::no();
  auto measure = [&](Nat n) { return y.measure_in(Rational(f(n)), Rational(f(n + 1))); };
  if (auto c = std::get_if<MeasureThreshold::ConstEps>(&t.rep))
    return scan(policy.horizon, q, [&](Nat n) { return measure(n) <= c->eps; });
  const auto& eps = std::get<MeasureThreshold::VecEps>(t.rep).eps;
  Rational cur;
  return scan(policy.horizon, q, [&](Nat n) {
    cur = n < eps.prefix.size() ? eps.prefix[n] : (n == eps.prefix.size() ? eps.scale : cur * eps.ratio);
    return measure(n) <= cur;
  });
}

const std::vector<std::string>& relation_ids() {
  static const std::vector<std::string> ids = {
      "forall_k",       "exists_k",       "col_forall_k", "col_exists_k", "blass_incl", "leq_star",  "measure_forall",
      "measure_exists", "measure_sum",    "measure_vec",  "id_forall",    "id_exists",  "bd_forall", "bd_exists"};
  return ids;
}

bool is_relation_id(const std::string& id) {
  const auto& ids = relation_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

}  // namespace itl
