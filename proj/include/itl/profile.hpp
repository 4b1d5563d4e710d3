#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "itl/error.hpp"
#include "itl/measurable.hpp"
#include "itl/omega_set.hpp"
#include "itl/partition.hpp"
#include "itl/stream.hpp"

namespace itl {

/// An ultimately periodic sequence: c(n) = head[n] for n < T, cycle[(n-T) mod P] after.
template <class V>
struct Profile {
  std::vector<V> head;
  std::vector<V> cycle;

  Nat transient() const { return head.size(); }
  Nat period() const { return cycle.size(); }
  const V& at(Nat n) const { return n < head.size() ? head[n] : cycle[(n - head.size()) % cycle.size()]; }

  template <class Pred>
  bool all_cycle(Pred p) const { return std::all_of(cycle.begin(), cycle.end(), p); }
  template <class Pred>
  bool any_cycle(Pred p) const { return std::any_of(cycle.begin(), cycle.end(), p); }
  V cycle_max() const { return *std::max_element(cycle.begin(), cycle.end()); }
  V cycle_min() const { return *std::min_element(cycle.begin(), cycle.end()); }
};

using CountProfile = Profile<Nat>;
using MeasureProfile = Profile<Rational>;

/// Shrinks (T, P) to the least period and transient describing the same sequence.
template <class V>
Profile<V> normalize_profile(const std::vector<V>& values, Nat transient, Nat period) {
  Nat best = period;
  for (Nat p = 1; p < period; ++p) {
    if (period % p) continue;
    bool ok = true;
    for (Nat i = 0; i + p < period && ok; ++i) ok = values[transient + i] == values[transient + i + p];
    if (ok) {
      best = p;
      break;
    }
  }
  Nat t = transient;
  while (t > 0 && values[t - 1] == values[t - 1 + best]) --t;
  Profile<V> out;
  out.head.assign(values.begin(), values.begin() + t);
  out.cycle.assign(values.begin() + t, values.begin() + t + best);
  return out;
}

/// Cycle detection over a finite state space.
///
/// state_at(n) is empty while n is still in the transient region and otherwise a
/// state that determines value_at(m) for all m >= n and state_at(n+1).
template <class V, class State>
Profile<V> detect_profile(const std::function<std::optional<State>(Nat)>& state_at,
                          const std::function<V(Nat)>& value_at, Nat max_steps = 50'000'000) {
  std::map<State, Nat> seen;
  for (Nat n = 0; n < max_steps; ++n) {
    auto s = state_at(n);
    if (!s) continue;
    auto [it, fresh] = seen.emplace(std::move(*s), n);
    if (fresh) continue;
    const Nat first = it->second;
    const Nat period = n - first;
    std::vector<V> values;
    values.reserve(n);
    for (Nat m = 0; m < n; ++m) values.push_back(value_at(m));
    return normalize_profile(values, first, period);
  }
  throw ProgramDivergence("cycle detection exceeded " + std::to_string(max_steps) + " steps");
}

/// Profile of |[f(n), f(n+1)) ∩ X| for EPDiff f and ultimately periodic X.
CountProfile interval_count_profile(const UpStream& f, const OmegaSet& x);
/// Profile of the number of distinct blocks of P meeting [f(n), f(n+1)).
CountProfile colored_count_profile(const UpStream& f, const Partition& p);
/// Profile of μ([f(n), f(n+1)) ∩ Y).
MeasureProfile measure_profile(const UpStream& f, const MeasurableSet& y);
/// Profile of [∃m: [f(m), f(m+1)) ⊆ [g(n), g(n+1))] as 0/1.
CountProfile nesting_profile(const UpStream& f, const UpStream& g);

/// whether some f-interval lies inside [g(n), g(n+1))
bool nests_at(const UpStream& f, const UpStream& g, Nat n);

template <class V>
std::string profile_to_string(const Profile<V>& p) {
  auto show = [](const std::vector<V>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      if constexpr (std::is_same_v<V, Rational>) s += format_rational(v[i]); else s += std::to_string(v[i]);
    }
    return s + "]";
  };
  return "T=" + std::to_string(p.transient()) + " P=" + std::to_string(p.period()) + " head=" + show(p.head) +
         " cycle=" + show(p.cycle);
}

}  // namespace itl
