#include "itl/constructions.hpp"

#include <algorithm>
#include <map>

#include "itl/error.hpp"
#include "itl/json_io.hpp"
#include "itl/random.hpp"

namespace itl {

namespace {

Json schedule_json(const Schedule& s) {
  if (s.squares) return "squares";
  return Json{{"stride", s.stride}, {"offset", s.offset}};
}

ProgramSpec program(Json descriptor, Nat initial, std::function<Nat(Nat, Nat)> step) {
  ProgramSpec p;
  p.descriptor = canonical(descriptor);
  p.initial = initial;
  p.step = std::move(step);
  return p;
}

/// Program with the eventual form read off its own values.
UpStream with_form(ProgramSpec p, const Rational& a, const Rational& b, Nat period, Nat from) {
  const auto probe = UpStream::program(p);
  p.form = fit_form(probe, a, b, period, from);
  return UpStream::program(std::move(p));
}

/// f(n) = n + shift for every n >= from, when f is EPDiff with an all-ones cycle.
struct UnitTail {
  Nat from;
  Nat shift;
};

std::optional<UnitTail> unit_tail(const UpStream& f) {
  const auto* e = f.as_ep();
  if (!e || std::any_of(e->cycle.begin(), e->cycle.end(), [](Nat d) { return d != 1; })) return std::nullopt;
  const Nat from = e->prefix.size();
  return UnitTail{from, f(from) - from};
}

/// f(x) - x grows at least linearly, so recurrences feeding f back into itself are superlinear.
Tri expanding(const UpStream& f) {
  if (unit_tail(f)) return Tri::False;
  if (f.as_ep() || f.as_ramp()) return Tri::True;
  return f.classify().divergent == Tri::True ? Tri::True : Tri::Unknown;
}

}  // namespace

OmegaSet range_set(const UpStream& b) {
  if (b.as_ep()) return range_word(b);
  return OmegaSet::range(b);
}

UpStream reindex_stream(const UpStream& f, const Schedule& s) {
  if (!s.squares && s.stride == 0) throw BadParams("reindex stride must be positive");
  if (!s.squares) {
    const Nat m = s.stride, c = s.offset;
    if (s == Schedule{false, 1, 0}) return f;
    if (const auto* e = f.as_ep()) {
      const Nat pf = e->prefix.size(), cf = e->cycle.size();
      const Nat n0 = c >= pf ? 0 : (pf - c + m - 1) / m;
      const Nat p = cf / gcd(m, cf);
      auto d = [&](Nat n) { return f(m * (n + 1) + c) - f(m * n + c); };
      std::vector<Nat> prefix, cycle;
      for (Nat n = 0; n < n0; ++n) prefix.push_back(d(n));
      for (Nat n = n0; n < n0 + p; ++n) cycle.push_back(d(n));
      return UpStream::ep(f(c), prefix, cycle);
    }
    if (const auto* r = f.as_ramp()) {
      const Nat alpha = checked_mul(r->alpha, checked_mul(m, m));
      const Nat beta = checked_add(checked_add(checked_mul(r->alpha, checked_mul(m, c)),
                                               checked_mul(r->alpha, m * (m - 1) / 2)),
                                   checked_mul(r->beta, m));
      return UpStream::ramp(f(c), alpha, beta);
    }
  }
  auto p = program(Json{{"kind", "program"}, {"id", "reindex"}, {"schedule", schedule_json(s)}, {"of", to_json(f)}},
                   f(s.at(0)), [f, s](Nat n, Nat) { return f(s.at(n)); });
  const auto cls = f.classify();
  const auto q = f.form();
  if (s.squares) {
    // consecutive squares are 2n+1 apart
    p.facts = {std::max<Nat>(cls.min_diff, 1), Tri::True, Tri::True, Tri::Unknown};
    if (cls.superlinear == Tri::True || (q && q->a > 0)) p.facts.superlinear = Tri::True;
    if (q) {
      if (auto sq = squares_form(*q)) {
        p.facts.superlinear = Tri::False;
        p.form = *sq;
      }
    }
  } else {
    p.facts = {checked_mul(cls.min_diff, s.stride), cls.gt_id == Tri::True ? Tri::True : Tri::Unknown, cls.divergent,
               cls.superlinear};
    if (q) p.form = reindex_form(*q, s.stride, s.offset);
  }
  return UpStream::program(std::move(p));
}

UpStream sample_enumeration(const OmegaSet& x, const Schedule& s) {
  if (const auto* r = x.as_range()) return reindex_stream(*r, s);
  return reindex_stream(enumeration_stream(x), s);
}

UpStream scale_values(const UpStream& f, Nat b) {
  if (b == 0) throw BadParams("scale factor must be at least 1");
  if (b == 1) return f;
  if (const auto* e = f.as_ep()) {
    auto scaled = [b](std::vector<Nat> v) {
      for (auto& d : v) d = checked_mul(d, b);
      return v;
    };
    return UpStream::ep(checked_mul(e->start, b), scaled(e->prefix), scaled(e->cycle));
  }
  if (const auto* r = f.as_ramp())
    return UpStream::ramp(checked_mul(r->start, b), checked_mul(r->alpha, b), checked_mul(r->beta, b));
  auto p = program(Json{{"kind", "program"}, {"id", "scale"}, {"factor", b}, {"of", to_json(f)}},
                   checked_mul(f(0), b), [f, b](Nat n, Nat) { return checked_mul(f(n), b); });
  const auto cls = f.classify();
  p.facts = {checked_mul(cls.min_diff, b), cls.gt_id == Tri::True ? Tri::True : Tri::Unknown, cls.divergent,
             cls.superlinear};
  if (auto q = f.form()) {
    const Rational rb(b);
    QuasiForm out{q->a * rb, q->b * rb, q->c, q->from};
    for (auto& c : out.c) c *= rb;
    p.form = out;
  }
  return UpStream::program(std::move(p));
}

MeasurableSet contract_set(const MeasurableSet& y, Nat b) {
  if (b == 0) throw BadParams("contraction factor must be at least 1");
  const Rational rb(b);
  auto shrink = [&rb](std::vector<RInterval> v) {
    for (auto& i : v) {
      i.lo /= rb;
      i.hi /= rb;
    }
    return v;
  };
  return MeasurableSet::make(shrink(y.prefix()), shrink(y.motif()), y.p0() / rb, y.period() / rb);
}

Partition interval_partition_of(const UpStream& g, bool merge_first) {
  if (!g.as_ep()) throw FragmentUnsupported("interval partitions need an EPDiff boundary stream");
  return Partition::intervals(g, merge_first ? 1 : 0);
}

OmegaSet minima_set(const Partition& p) { return p.extremes(false); }

UpStream sparse_selector(const UpStream& f) {
  if (auto tail = unit_tail(f)) {
    // once f'(n) passes the prefix, f'(n+1) = f'(n) + shift + 2
    std::vector<Nat> prefix;
    Nat v = 0;
    while (v < tail->from) {
      const Nat next = checked_add(f(v), 2);
      prefix.push_back(next - v);
      v = next;
    }
    return UpStream::ep(0, prefix, {tail->shift + 2});
  }
  auto p = program(Json{{"kind", "program"}, {"id", "sparse_selector"}, {"of", to_json(f)}}, 0,
                   [f](Nat, Nat prev) { return checked_add(f(prev), 2); });
  const Tri grows = expanding(f);
  p.facts = {2, Tri::Unknown, grows, grows};
  return UpStream::program(std::move(p));
}

UpStream double_count_bound(const OmegaSet& x, Nat k) {
  if (k == 0) throw BadParams("double_count_bound needs k >= 1");
  auto first_over = [x, k](Nat n) { return x.enumerate(x.count_below(n) + 2 * k) + 1; };
  if (auto w = x.to_word()) {
    // f_X(n) - n is periodic past the prefix, so the envelope settles to n + const
    const Nat settle = w->prefix_length() + w->cycle_length();
    std::vector<Nat> prefix;
    Nat g = first_over(0);
    const Nat start = g;
    for (Nat n = 1; n <= settle; ++n) {
      const Nat next = std::max(first_over(n), g + 1);
      prefix.push_back(next - g);
      g = next;
    }
    return UpStream::ep(start, prefix, {1});
  }
  auto p = program(Json{{"kind", "program"}, {"id", "double_count_bound"}, {"of", to_json(x)}, {"k", k}},
                   first_over(0), [first_over](Nat n, Nat prev) { return std::max(first_over(n), prev + 1); });
  return UpStream::program(std::move(p));
}

UpStream recursive_spreader(const UpStream& h, Nat k) {
  auto p = program(Json{{"kind", "program"}, {"id", "recursive_spreader"}, {"of", to_json(h)}, {"k", k}}, 0,
                   [h, k](Nat, Nat prev) { return checked_add(checked_add(k + 1, prev), h(prev)); });
  // h'(n) >= (k+1)n, so each difference k+1+h(h'(n)) exceeds n and doubles the value
  p.facts = {k + 1, Tri::True, Tri::True, Tri::True};
  return UpStream::program(std::move(p));
}

MeasurableSet unit_blocks(const OmegaSet& x, Nat width) {
  if (width == 0) throw BadParams("block width must be positive");
  auto w = x.to_word();
  if (!w) throw FragmentUnsupported("unit_blocks needs an ultimately periodic set");
  if (width > 1) return unit_blocks(thicken(*w, width - 1), 1);
  const auto& spec = *w->as_word();
  std::vector<RInterval> prefix, motif;
  for (Nat i = 0; i < spec.prefix.size(); ++i)
    if (spec.prefix[i]) prefix.push_back({Rational(i), Rational(i + 1)});
  for (Nat j = 0; j < spec.cycle.size(); ++j)
    if (spec.cycle[j]) motif.push_back({Rational(j), Rational(j + 1)});
  return MeasurableSet::make(normalize_intervals(prefix), normalize_intervals(motif), Rational(spec.prefix.size()),
                             Rational(spec.cycle.size()));
}

OmegaSet greedy_mass_points(const MeasurableSet& y, Nat threshold) {
  if (threshold == 0) throw BadParams("mass threshold must be positive");
  auto next_point = [&](Nat from) {
    const Rational target = y.measure_below(Rational(from)) + Rational(threshold);
    Nat lo = from, hi = from + 1;
    while (y.measure_below(Rational(hi)) < target) {
      lo = hi;
      hi = checked_mul(hi, 2);
    }
    // least m in (lo, hi] reaching the target
    while (hi - lo > 1) {
      const Nat mid = lo + (hi - lo) / 2;
      (y.measure_below(Rational(mid)) >= target ? hi : lo) = mid;
    }
    return hi;
  };
  // beyond p0 the future depends only on the position modulo the period
  std::map<Rational, Nat> seen;
  std::vector<Nat> points{0};
  for (;;) {
    const Nat cur = points.back();
    if (Rational(cur) >= y.p0()) {
      auto [it, fresh] = seen.emplace(mod(Rational(cur) - y.p0(), y.period()), points.size() - 1);
      if (!fresh) {
        std::vector<Nat> prefix, cycle;
        for (Nat j = 1; j < points.size(); ++j) (j <= it->second ? prefix : cycle).push_back(points[j] - points[j - 1]);
        return OmegaSet::range(UpStream::ep(0, prefix, cycle));
      }
    }
    points.push_back(next_point(cur));
  }
}

UpStream id_majorant(const OmegaSet& x, const Schedule& s) {
  auto sample = [x, s](Nat n) { return x.enumerate(s.at(n)); };
  auto spec = program(Json{{"kind", "program"}, {"id", "id_majorant"}, {"schedule", schedule_json(s)}, {"of", to_json(x)}},
                      sample(0), [sample](Nat n, Nat prev) { return std::max(sample(n), checked_add(prev, n + 1)); });
  spec.facts = {1, Tri::True, Tri::True, Tri::Unknown};
  const auto w = x.to_word();
  if (!w) return UpStream::program(std::move(spec));

  const auto probe = UpStream::program(spec);
  const Nat len = w->cycle_length(), ones = w->ones_per_cycle();
  spec.facts.superlinear = Tri::False;
  try {
    if (s.squares) {
      // gaps of x_{n^2} are at least 2n-1 >= n+1, so h = x_{n^2} from the first agreement on
      Nat n = 2;
      while (n * n < w->ones_in_prefix()) ++n;
      while (probe(n) != sample(n)) ++n;
      spec.form = fit_form(probe, Rational(len, ones), 0, ones, n);
    } else {
      // past the prefix, sampled gaps stay below s·L, so the recurrence branch wins from here on
      Nat n = checked_mul(s.stride, len) + 1;
      while (s.at(n - 1) < w->ones_in_prefix()) ++n;
      spec.form = fit_form(probe, Rational(1, 2), Rational(3, 2), 1, n);
    }
  } catch (const ProgramDivergence&) {
    spec.facts.superlinear = Tri::Unknown;
  }
  return UpStream::program(std::move(spec));
}

UpStream nested_accelerator(const UpStream& f, Nat lag) {
  Json d{{"kind", "program"}, {"id", "nested_accelerator"}, {"of", to_json(f)}};
  if (lag != 1) d["lag"] = lag;
  auto spec = program(d, 0, [f, lag](Nat n, Nat prev) {
    // the max only matters for lag 0, where f(h(n)+n) may fail to increase
    return std::max(f(checked_add(prev, n - 1 + lag)), prev + 1);
  });
  // h(n+1) - h(n) = f(h(n)+n+lag) - h(n) >= n + lag
  spec.facts = {std::max<Nat>(lag, 1), lag >= 1 ? Tri::True : Tri::Unknown, Tri::True, expanding(f)};
  if (auto tail = unit_tail(f)) {
    const auto probe = UpStream::program(spec);
    Nat n = 0;
    while (probe(n) + n + lag < tail->from) ++n;
    return with_form(std::move(spec), Rational(1, 2), Rational(lag + tail->shift) - Rational(1, 2), 1, n);
  }
  return UpStream::program(std::move(spec));
}

UpStream bd_forall_spreader(const UpStream& g) {
  auto spec = program(Json{{"kind", "program"}, {"id", "bd_forall_spreader"}, {"of", to_json(g)}}, g(0),
                      [g](Nat n, Nat prev) { return checked_add(g(prev), n); });
  // g(x) >= x gives differences of at least n+1
  spec.facts = {1, Tri::True, Tri::True, expanding(g)};
  if (auto tail = unit_tail(g)) {
    const auto probe = UpStream::program(spec);
    Nat n = 0;
    while (probe(n) < tail->from) ++n;
    return with_form(std::move(spec), Rational(1, 2), Rational(tail->shift) + Rational(1, 2), 1, n);
  }
  return UpStream::program(std::move(spec));
}

std::pair<UpStream, UpStream> interleaved_pair(std::uint64_t seed) {
  if (seed == 0) return {UpStream::ep(0, {}, {2}), UpStream::ep(1, {}, {2})};
  SplitMix rng(mix_seed(seed, 0));
  const Nat p = rng.between(1, 4);
  std::vector<Nat> a(p), b(p);
  for (Nat i = 0; i < p; ++i) {
    a[i] = rng.between(1, 3);
    b[i] = rng.between(1, 3);
  }
  // f(n) -> g(n) spans a, g(n) -> f(n+1) spans b
  std::vector<Nat> fc(p), gc(p);
  for (Nat i = 0; i < p; ++i) {
    fc[i] = a[i] + b[i];
    gc[i] = b[i] + a[(i + 1) % p];
  }
  const Nat start = rng.between(0, 3);
  return {UpStream::ep(start, {}, fc), UpStream::ep(start + a[0], {}, gc)};
}

}  // namespace itl
