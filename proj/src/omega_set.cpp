#include "itl/omega_set.hpp"

#include <algorithm>

#include "itl/error.hpp"

namespace itl {

std::string bits_to_string(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<bool> bits_from_string(std::string_view s) {
  std::vector<bool> out;
  for (char c : s) {
    if (c != '0' && c != '1') throw MalformedSpec("word must contain only 0 and 1");
    out.push_back(c == '1');
  }
  return out;
}

OmegaSet OmegaSet::word(std::vector<bool> prefix, std::vector<bool> cycle) {
  if (cycle.empty()) throw MalformedSpec("empty cycle word");
  if (std::find(cycle.begin(), cycle.end(), true) == cycle.end()) {
    throw MalformedSpec("cycle word has no 1, set would be finite");
  }
  OmegaSet x;
  x.ones_prefix_.assign(1, 0);
  for (bool b : prefix) x.ones_prefix_.push_back(x.ones_prefix_.back() + b);
  x.ones_cycle_.assign(1, 0);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    x.ones_cycle_.push_back(x.ones_cycle_.back() + cycle[i]);
    if (cycle[i]) x.cycle_ones_at_.push_back(i);
  }
  x.rep_ = WordSpec{std::move(prefix), std::move(cycle)};
  return x;
}

OmegaSet OmegaSet::word(std::string_view prefix, std::string_view cycle) {
  return word(bits_from_string(prefix), bits_from_string(cycle));
}

OmegaSet OmegaSet::range(UpStream s) {
  OmegaSet x;
  x.rep_ = std::move(s);
  return x;
}

bool OmegaSet::contains(Nat m) const {
  if (auto w = as_word()) {
    if (m < w->prefix.size()) return w->prefix[m];
    return w->cycle[(m - w->prefix.size()) % w->cycle.size()];
  }
  const auto& s = *as_range();
  return s(s.lower_index(m)) == m;
}

Nat OmegaSet::count_below(Nat b) const {
  if (auto w = as_word()) {
    const Nat p = w->prefix.size();
    if (b <= p) return ones_prefix_[b];
    const Nat rest = b - p;
    const Nat len = w->cycle.size();
    return checked_add(ones_prefix_[p], checked_add(checked_mul(rest / len, ones_per_cycle()), ones_cycle_[rest % len]));
  }
  return as_range()->lower_index(b);
}

Nat OmegaSet::count_in(Nat a, Nat b) const {
  if (b <= a) return 0;
  return count_below(b) - count_below(a);
}

Nat OmegaSet::enumerate(Nat i) const {
  if (auto w = as_word()) {
    const Nat in_prefix = ones_in_prefix();
    if (i < in_prefix) {
      auto it = std::upper_bound(ones_prefix_.begin(), ones_prefix_.end(), i);
      return static_cast<Nat>(it - ones_prefix_.begin()) - 1;
    }
    const Nat j = i - in_prefix;
    const Nat w1 = ones_per_cycle();
    return checked_add(w->prefix.size(), checked_add(checked_mul(j / w1, w->cycle.size()), cycle_ones_at_[j % w1]));
  }
  return (*as_range())(i);
}

Tri OmegaSet::co_infinite() const {
  if (auto w = as_word()) return tri(std::find(w->cycle.begin(), w->cycle.end(), false) != w->cycle.end());
  const auto& s = *as_range();
  if (auto e = s.as_ep()) return tri(std::any_of(e->cycle.begin(), e->cycle.end(), [](Nat d) { return d >= 2; }));
  const auto cls = s.classify();
  if (cls.divergent == Tri::True || cls.min_diff >= 2) return Tri::True;
  return Tri::Unknown;
}

std::optional<OmegaSet> OmegaSet::to_word() const {
  if (as_word()) return *this;
  const auto& s = *as_range();
  if (s.as_ep()) return range_word(s);
  return std::nullopt;
}

std::string OmegaSet::to_string() const {
  if (auto w = as_word()) return bits_to_string(w->prefix) + "(" + bits_to_string(w->cycle) + ")^w";
  return "range(" + std::string(itl::to_string(as_range()->kind())) + ")";
}

OmegaSet range_word(const UpStream& s) {
  const auto* e = s.as_ep();
  if (!e) throw FragmentUnsupported("range word needs an EPDiff stream");
  const Nat n0 = e->prefix.size();
  const Nat base = s(n0);
  std::vector<bool> prefix(base, false);
  for (Nat i = 0; i < n0; ++i) prefix[s(i)] = true;
  Nat len = 0;
  for (Nat d : e->cycle) len += d;
  std::vector<bool> cycle(len, false);
  Nat off = 0;
  for (Nat d : e->cycle) {
    cycle[off] = true;
    off += d;
  }
  return OmegaSet::word(std::move(prefix), std::move(cycle));
}

UpStream enumeration_stream(const OmegaSet& x) {
  if (auto r = x.as_range()) return *r;
  const auto& w = *x.as_word();
  const Nat k = x.ones_in_prefix();
  const Nat w1 = x.ones_per_cycle();
  // elements k .. k+w1 repeat with period |cycle|
  std::vector<Nat> prefix, cycle;
  for (Nat i = 0; i < k; ++i) prefix.push_back(x.enumerate(i + 1) - x.enumerate(i));
  for (Nat i = 0; i < w1; ++i) cycle.push_back(x.enumerate(k + i + 1) - x.enumerate(k + i));
  (void)w;
  return UpStream::ep(x.enumerate(0), std::move(prefix), std::move(cycle));
}

OmegaSet thicken(const OmegaSet& x, Nat r) {
  auto w = x.to_word();
  if (!w) throw FragmentUnsupported("thicken needs an ultimately periodic set");
  const Nat p = w->prefix_length() + r;
  const Nat len = w->cycle_length();
  auto bit = [&](Nat m) {
    for (Nat j = 0; j <= r && j <= m; ++j) {
      if (w->contains(m - j)) return true;
    }
    return false;
  };
  std::vector<bool> prefix, cycle;
  for (Nat m = 0; m < p; ++m) prefix.push_back(bit(m));
  for (Nat m = p; m < p + len; ++m) cycle.push_back(bit(m));
  return OmegaSet::word(std::move(prefix), std::move(cycle));
}

}  // namespace itl
