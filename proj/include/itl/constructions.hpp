#pragma once

#include <optional>
#include <utility>

#include "itl/measurable.hpp"
#include "itl/omega_set.hpp"
#include "itl/partition.hpp"
#include "itl/stream.hpp"

namespace itl {

/// Index schedule n -> m*n + c, or n -> n^2.
struct Schedule {
  bool squares = false;
  Nat stride = 1;
  Nat offset = 0;

  static Schedule pairs() { return {false, 2, 0}; }
  static Schedule shift() { return {false, 1, 1}; }
  static Schedule arith(Nat s) { return {false, s, 0}; }
  static Schedule square() { return {true, 0, 0}; }
  Nat at(Nat n) const { return squares ? n * n : stride * n + offset; }
  bool operator==(const Schedule&) const = default;
};

/// ran(b); a word whenever b is EPDiff.
OmegaSet range_set(const UpStream& b);
/// n -> f(schedule(n)). Linear schedules keep EPDiff and Ramp; squares give a program.
UpStream reindex_stream(const UpStream& f, const Schedule& s);
/// n -> x_{schedule(n)} for the increasing enumeration of X.
UpStream sample_enumeration(const OmegaSet& x, const Schedule& s);

/// n -> B*f(n).
UpStream scale_values(const UpStream& f, Nat b);
/// {x/B : x in Y}.
MeasurableSet contract_set(const MeasurableSet& y, Nat b);

/// Partition into the g-intervals; merge_first fuses [g(0), g(1)) with [0, g(0)).
Partition interval_partition_of(const UpStream& g, bool merge_first);
/// Set of block minima.
OmegaSet minima_set(const Partition& p);

/// f'(0) = 0, f'(n+1) = f(f'(n)) + 2.
UpStream sparse_selector(const UpStream& f);
/// Monotone envelope of n -> min{m > n : |[n, m) ∩ X| > 2k}.
UpStream double_count_bound(const OmegaSet& x, Nat k);
/// h'(0) = 0, h'(n+1) = k + 1 + h'(n) + h(h'(n)).
UpStream recursive_spreader(const UpStream& h, Nat k);

/// ⋃_{j∈X} [j, j+1) for X with a word view.
MeasurableSet unit_blocks(const OmegaSet& x, Nat width = 1);
/// y_0 = 0, y_j = least m with μ([y_{j-1}, m) ∩ Y) >= threshold.
OmegaSet greedy_mass_points(const MeasurableSet& y, Nat threshold = 2);

/// h(0) = x_0, h(n) = max(x_{s(n)}, h(n-1) + n + 1); s defaults to squares.
UpStream id_majorant(const OmegaSet& x, const Schedule& s = Schedule::square());
/// h(0) = 0, h(n+1) = f(h(n) + n + lag); the construction uses lag 1.
UpStream nested_accelerator(const UpStream& f, Nat lag = 1);
/// f(0) = g(0), f(n+1) = g(f(n)) + n + 1.
UpStream bd_forall_spreader(const UpStream& g);

/// EPDiff pair with f(n) < g(n) < f(n+1) < g(n+1); seed 0 gives 2n and 2n+1.
std::pair<UpStream, UpStream> interleaved_pair(std::uint64_t seed);

}  // namespace itl
