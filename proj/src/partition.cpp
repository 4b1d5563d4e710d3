#include "itl/partition.hpp"

#include <algorithm>
#include <map>

#include "itl/error.hpp"

namespace itl {

Partition Partition::make(UpStream boundaries, std::vector<WindowPattern> prefix_patterns,
                          std::vector<WindowPattern> cycle_patterns, Nat merge_prefix) {
  if (!boundaries.as_ep()) throw MalformedSpec("partition boundaries must be an EPDiff stream");
  if (cycle_patterns.empty()) throw MalformedSpec("partition needs at least one cyclic window pattern");
  Partition p;
  p.boundaries_ = std::move(boundaries);
  p.prefix_ = std::move(prefix_patterns);
  p.cycle_ = std::move(cycle_patterns);
  p.merge_ = merge_prefix;
  const Nat last = p.periodic_from() + p.window_period();
  for (Nat j = 0; j < last; ++j) {
    const auto& pat = p.pattern(j);
    if (pat.empty()) throw MalformedSpec("empty window pattern");
    if (pat.size() != p.boundaries_.diff(j)) {
      throw MalformedSpec("pattern for window " + std::to_string(j) + " has length " + std::to_string(pat.size()) +
                          " but the window has length " + std::to_string(p.boundaries_.diff(j)));
    }
  }
  return p;
}

Partition Partition::intervals(UpStream boundaries, Nat merge_prefix) {
  const auto* e = boundaries.as_ep();
  if (!e) throw FragmentUnsupported("interval partitions need an EPDiff boundary stream");
  std::vector<WindowPattern> prefix, cycle;
  for (Nat d : e->prefix) prefix.emplace_back(d, 0);
  for (Nat d : e->cycle) cycle.emplace_back(d, 0);
  return make(std::move(boundaries), std::move(prefix), std::move(cycle), merge_prefix);
}

const WindowPattern& Partition::pattern(Nat window) const {
  if (window < prefix_.size()) return prefix_[window];
  return cycle_[(window - prefix_.size()) % cycle_.size()];
}

Nat Partition::periodic_from() const {
  return std::max<Nat>({boundaries_.as_ep()->prefix.size(), prefix_.size(), merge_});
}

Nat Partition::window_period() const {
  // the boundary cycle phase is (j - |prefix|) mod |cycle|, the pattern phase likewise
  return lcm(boundaries_.as_ep()->cycle.size(), cycle_.size());
}

Partition::BlockId Partition::block_of(Nat m) const {
  if (m < boundaries_(merge_)) return {-1, 0};
  const Nat j = window_of(m);
  return {static_cast<std::int64_t>(j), pattern(j)[m - boundaries_(j)]};
}

Nat Partition::blocks_meeting(Nat a, Nat b) const {
  if (b <= a) return 0;
  std::set<BlockId> seen;
  Nat m = a;
  const Nat head_end = boundaries_(merge_);
  if (m < head_end) {
    seen.insert({-1, 0});
    m = head_end;
  }
  while (m < b) {
    const Nat j = window_of(m);
    const Nat lo = boundaries_(j), hi = boundaries_(j + 1);
    const auto& pat = pattern(j);
    const Nat end = std::min(b, hi);
    for (Nat t = m; t < end; ++t) seen.insert({static_cast<std::int64_t>(j), pat[t - lo]});
    m = end;
  }
  return seen.size();
}

OmegaSet Partition::extremes(bool maxima) const {
  const Nat j0 = periodic_from();
  const Nat period = window_period();
  const Nat base = boundaries_(j0);
  std::vector<bool> prefix(base, false), cycle(boundaries_(j0 + period) - base, false);
  auto mark = [&](Nat m) {
    if (m < base) prefix[m] = true; else cycle[m - base] = true;
  };
  const Nat head_end = boundaries_(merge_);
  if (head_end > 0) mark(maxima ? head_end - 1 : 0);
  for (Nat j = merge_; j < j0 + period; ++j) {
    const auto& pat = pattern(j);
    std::map<std::uint32_t, Nat> pick;
    for (Nat t = 0; t < pat.size(); ++t) {
      if (maxima || !pick.count(pat[t])) pick[pat[t]] = t;
    }
    for (auto [label, t] : pick) mark(boundaries_(j) + t);
  }
  return OmegaSet::word(std::move(prefix), std::move(cycle));
}

}  // namespace itl
