#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "itl/omega_set.hpp"
#include "itl/stream.hpp"

namespace itl {

/// Labels for the positions of one window; equal labels form one block.
using WindowPattern = std::vector<std::uint32_t>;

/// An infinite partition of the naturals into finite blocks.
///
/// Windows are [w(j), w(j+1)) for an EPDiff boundary stream w. The head block is
/// [0, w(merge_prefix)), holding everything below the first unmerged window (it is
/// absent when that interval is empty). Every later window is split into blocks by
/// its pattern: window j uses prefix_patterns[j] while j is inside the pattern
/// prefix, then the cycle patterns in order.
class Partition {
 public:
  /// Block identity: window index and label, or the head block.
  struct BlockId {
    std::int64_t window;  // -1 for the head block
    std::uint32_t label;
    auto operator<=>(const BlockId&) const = default;
  };

  static Partition make(UpStream boundaries, std::vector<WindowPattern> prefix_patterns,
                        std::vector<WindowPattern> cycle_patterns, Nat merge_prefix = 0);
  /// One block per window.
  static Partition intervals(UpStream boundaries, Nat merge_prefix = 0);

  const UpStream& boundaries() const { return boundaries_; }
  const std::vector<WindowPattern>& prefix_patterns() const { return prefix_; }
  const std::vector<WindowPattern>& cycle_patterns() const { return cycle_; }
  Nat merge_prefix() const { return merge_; }

  const WindowPattern& pattern(Nat window) const;
  Nat window_of(Nat m) const { return boundaries_.lower_index(m + 1) - 1; }
  bool has_head() const { return boundaries_(merge_) > 0; }
  BlockId block_of(Nat m) const;
  /// number of distinct blocks meeting [a, b)
  Nat blocks_meeting(Nat a, Nat b) const;
  /// first window index after which boundaries and patterns are both periodic
  Nat periodic_from() const;
  /// period (in windows) of the joint boundary and pattern cycle
  Nat window_period() const;

  /// set of block minima (or maxima) as a word
  OmegaSet extremes(bool maxima) const;

 private:
  UpStream boundaries_ = UpStream::identity();
  std::vector<WindowPattern> prefix_;
  std::vector<WindowPattern> cycle_;
  Nat merge_ = 0;
};

}  // namespace itl
