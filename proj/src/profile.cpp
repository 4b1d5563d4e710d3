#include "itl/profile.hpp"

#include <tuple>

namespace itl {

namespace {

const EPDiffSpec& require_ep(const UpStream& f, const char* op) {
  const auto* e = f.as_ep();
  if (!e) throw FragmentUnsupported(std::string(op) + " needs an EPDiff stream");
  return *e;
}

}  // namespace

CountProfile interval_count_profile(const UpStream& f, const OmegaSet& x) {
  const auto& e = require_ep(f, "interval_count_profile");
  auto w = x.to_word();
  if (!w) throw FragmentUnsupported("interval_count_profile needs an ultimately periodic set");
  const Nat pf = e.prefix.size(), cf = e.cycle.size();
  const Nat pw = w->prefix_length(), len = w->cycle_length();
  using State = std::pair<Nat, Nat>;
  std::function<std::optional<State>(Nat)> state = [&](Nat n) -> std::optional<State> {
    const Nat v = f(n);
    if (n < pf || v < pw) return std::nullopt;
    return State{(n - pf) % cf, (v - pw) % len};
  };
  std::function<Nat(Nat)> value = [&](Nat n) { return w->count_in(f(n), f(n + 1)); };
  return detect_profile<Nat, State>(state, value);
}

CountProfile colored_count_profile(const UpStream& f, const Partition& p) {
  const auto& e = require_ep(f, "colored_count_profile");
  const Nat pf = e.prefix.size(), cf = e.cycle.size();
  const Nat j0 = p.periodic_from(), wp = p.window_period();
  using State = std::tuple<Nat, Nat, Nat>;
  std::function<std::optional<State>(Nat)> state = [&](Nat n) -> std::optional<State> {
    const Nat v = f(n);
    if (n < pf || v < p.boundaries()(j0)) return std::nullopt;
    const Nat j = p.window_of(v);
    return State{(n - pf) % cf, (j - j0) % wp, v - p.boundaries()(j)};
  };
  std::function<Nat(Nat)> value = [&](Nat n) { return p.blocks_meeting(f(n), f(n + 1)); };
  return detect_profile<Nat, State>(state, value);
}

MeasureProfile measure_profile(const UpStream& f, const MeasurableSet& y) {
  const auto& e = require_ep(f, "measure_profile");
  const Nat pf = e.prefix.size(), cf = e.cycle.size();
  using State = std::pair<Nat, Rational>;
  std::function<std::optional<State>(Nat)> state = [&](Nat n) -> std::optional<State> {
    Rational v(f(n));
    if (n < pf || v < y.p0()) return std::nullopt;
    return State{(n - pf) % cf, mod(v - y.p0(), y.period())};
  };
  std::function<Rational(Nat)> value = [&](Nat n) { return y.measure_in(Rational(f(n)), Rational(f(n + 1))); };
  return detect_profile<Rational, State>(state, value);
}

bool nests_at(const UpStream& f, const UpStream& g, Nat n) {
  // the first f-interval starting at or after g(n) ends earliest
  const Nat m = f.lower_index(g(n));
  return f(m + 1) <= g(n + 1);
}

CountProfile nesting_profile(const UpStream& f, const UpStream& g) {
  const auto& ef = require_ep(f, "nesting_profile");
  const auto& eg = require_ep(g, "nesting_profile");
  const Nat pf = ef.prefix.size(), cf = ef.cycle.size();
  const Nat pg = eg.prefix.size(), cg = eg.cycle.size();
  using State = std::tuple<Nat, Nat, Nat>;
  std::function<std::optional<State>(Nat)> state = [&](Nat n) -> std::optional<State> {
    if (n < pg) return std::nullopt;
    const Nat m = f.lower_index(g(n));
    if (m < pf) return std::nullopt;
    return State{(n - pg) % cg, (m - pf) % cf, f(m) - g(n)};
  };
  std::function<Nat(Nat)> value = [&](Nat n) { return static_cast<Nat>(nests_at(f, g, n)); };
  return detect_profile<Nat, State>(state, value);
}

}  // namespace itl
