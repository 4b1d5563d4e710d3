// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "itl/constructions.hpp"
#include "itl/harness.hpp"
#include "itl/json_io.hpp"
#include "itl/profile.hpp"
#include "itl/random.hpp"
#include "itl/relations.hpp"
#include "itl/tukey.hpp"

using namespace itl;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;
using Fn = std::function<Nat(Nat)>;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Result {
  bool ok = true;
  std::string detail;
};

struct Checks {
  Nat total = 0;
  std::vector<std::string> failed;
  void expect(bool cond, const std::string& what) {
    ++total;
    if (!cond) failed.push_back(what);
  }
  Result result() const {
    std::string d = std::to_string(total - failed.size()) + "/" + std::to_string(total) + " checks";
    for (std::size_t i = 0; i < failed.size() && i < 5; ++i) d += "; failed: " + failed[i];
    return {failed.empty(), d};
  }
};

std::vector<Nat> take(const UpStream& f, Nat n) {
  std::vector<Nat> out;
  for (Nat i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

std::vector<Nat> take(const OmegaSet& x, Nat n) {
  std::vector<Nat> out;
  for (Nat i = 0; i < n; ++i) out.push_back(x.enumerate(i));
  return out;
}

std::vector<Nat> take(const Fn& f, Nat n) {
  std::vector<Nat> out;
  for (Nat i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

// Sequences defined by a recurrence, materialized eagerly.
std::vector<Nat> iterate(Nat v0, Nat n, const std::function<Nat(Nat, Nat)>& next) {
  std::vector<Nat> out{v0};
  while (out.size() < n) out.push_back(next(out.size() - 1, out.back()));
  return out;
}

bool word_bit(const WordSpec& w, Nat m) {
  return m < w.prefix.size() ? w.prefix[m] : w.cycle[(m - w.prefix.size()) % w.cycle.size()];
}

Nat brute_count(const std::function<bool(Nat)>& member, Nat a, Nat b) {
  Nat c = 0;
  for (Nat m = a; m < b; ++m) c += member(m);
  return c;
}

// --- criterion 1 ---

Result kernel_soundness() {
  const auto t0 = Clock::now();
  Nat mismatches = 0, compared = 0;
  std::string first_bad;
  for (Nat i = 0; i < 10'000; ++i) {
    SplitMix rng(mix_seed(1, i));
    GenParams gp;
    gp.seed = rng();
    const UpStream f = generate_ep(gp);
    gp.seed = rng();
    const OmegaSet x = generate_word(gp);
    const CountProfile prof = interval_count_profile(f, x);
    const Nat horizon = prof.transient() + 3 * prof.period() + 1;
    const OracleReport oracle = horizon_oracle(f, x, "forall_k", {{"k", "0"}}, horizon);
    const WordSpec& w = *x.as_word();
    for (Nat n = 0; n < horizon; ++n) {
      const Nat direct = brute_count([&](Nat m) { return word_bit(w, m); }, f(n), f(n + 1));
      ++compared;
      if (oracle.values[n] != Rational(prof.at(n)) || direct != prof.at(n)) {
        if (mismatches++ == 0) first_bad = to_json(f).dump() + " " + to_json(x).dump() + " n=" + std::to_string(n);
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << "10000 pairs, " << compared << " values, " << mismatches << " mismatches, " << secs << " s";
  if (!first_bad.empty()) d << "; first: " << first_bad;
  return {mismatches == 0 && secs < 30, d.str()};
}

// --- criteria 2, 3, 5 ---

std::vector<std::string> all_connections() {
  std::vector<std::string> ids;
  for (const auto& c : connection_registry()) ids.push_back(c.id);
  return ids;
}

SuiteReport suite(const std::string& id, Nat trials, bool mutant) {
  SuiteOptions o;
  o.trials = trials;
  o.seed = 1;
  o.mutant = mutant;
  return run_suite(id, o);
}

Result connection_suites(const fs::path& cli, const fs::path& tmp) {
  const auto ids = all_connections();
  std::vector<std::string> bad;
  double worst_vacuous = 0;
  for (const auto& id : ids) {
    const SuiteReport r = suite(id, 1000, false);
    worst_vacuous = std::max(worst_vacuous, r.vacuous_ratio());
    if (r.count(Status::Fail) > 0 || r.vacuous_ratio() > 0.95)
      bad.push_back(id + " (fail=" + std::to_string(r.count(Status::Fail)) +
                    ", vacuous=" + std::to_string(r.count(Status::Vacuous)) + ")");
  }
  const auto t0 = Clock::now();
  const std::string cmd = "'" + cli.string() + "' verify --all --trials 500 --seed 1 --report '" +
                          (tmp / "all500.json").string() + "' > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const double secs = seconds_since(t0);
  const bool cli_ok = WIFEXITED(status) && WEXITSTATUS(status) == 0;

  std::ostringstream d;
  d << ids.size() << " connections at 1000 trials, " << bad.size() << " failing, max vacuous "
    << static_cast<int>(worst_vacuous * 100) << "%; verify --all --trials 500 exit "
    << (WIFEXITED(status) ? WEXITSTATUS(status) : -1) << " in " << secs << " s";
  for (const auto& b : bad) d << "; " << b;
  return {ids.size() >= 24 && bad.empty() && cli_ok && secs < 60, d.str()};
}

Result mutant_detection() {
  const auto ids = all_connections();
  std::vector<std::string> missed;
  for (const auto& id : ids)
    if (suite(id, 1000, true).count(Status::Fail) == 0) missed.push_back(id);
  const Nat caught = ids.size() - missed.size();
  std::ostringstream d;
  d << caught << "/" << ids.size() << " mutants caught";
  for (const auto& m : missed) d << "; missed " << m;
  return {caught * 10 >= ids.size() * 9, d.str()};
}

Result monotonicity_shadows() {
  std::vector<std::string> ids;
  for (const std::string iota : {"forall", "exists"}) {
    for (const std::string base : {"fact_k_le_l", "fact_col_k_le_l", "fact_L_k_le_l", "R_to_L", "bd_below_Rk"})
      ids.push_back(base + "{iota=" + iota + "}");
  }
  for (const std::string id : {"fact_exists_le_forall", "fact_col_exists_le_forall", "fact_L_exists_le_forall"})
    ids.push_back(id);
  std::vector<std::string> bad;
  Nat decided = 0;
  for (const auto& id : ids) {
    const SuiteReport r = suite(id, 1000, false);
    decided += r.trials - r.count(Status::Inconclusive) - r.vacuous_unknown;
    if (r.count(Status::Fail) || r.count(Status::Inconclusive) || r.vacuous_unknown)
      bad.push_back(id + " (fail=" + std::to_string(r.count(Status::Fail)) +
                    ", inconclusive=" + std::to_string(r.count(Status::Inconclusive)) +
                    ", undecided premise=" + std::to_string(r.vacuous_unknown) + ")");
  }
  std::ostringstream d;
  d << ids.size() << " connections, " << decided << " decided instances, " << bad.size() << " with a miss";
  for (const auto& b : bad) d << "; " << b;
  return {bad.empty(), d.str()};
}

// --- criterion 4 ---

Result degenerate_cases() {
  const GenParams base{4, 5, 5, 0};
  Nat forall0_false = 0, sum_false = 0;
  for (Nat i = 0; i < 1000; ++i) {
    SplitMix rng(mix_seed(4, i));
    GenParams gp = base;
    gp.seed = rng();
    const UpStream f = generate_ep(gp);
    gp.seed = rng();
    const auto x = std::get<OmegaSet>(generate({DomainSpec::Kind::Sets}, gp));
    forall0_false += eval_count_relation(f, x, ThresholdSpec::constant(0), Quant::Forall).is_false();
    gp.seed = rng();
    const auto y = std::get<MeasurableSet>(generate({DomainSpec::Kind::Measurables}, gp));
    sum_false += eval_measure_relation(f, y, MeasureThreshold::sum(), Quant::Forall).is_false();
  }
  const SearchResult col1 = search_counterexample("both_col1", 1000, 4);
  std::ostringstream d;
  d << "(a) Const(0) forall False on " << forall0_false << "/1000; (b) both colored k=1 True in "
    << (col1.found ? "a witness" : "none") << " of " << col1.tried << " partitions; (c) Sum False on " << sum_false
    << "/1000";
  return {forall0_false == 1000 && !col1.found && col1.tried == 1000 && sum_false == 1000, d.str()};
}

// --- criterion 6 ---

Result construction_contracts() {
  Checks c;
  const Fn id = [](Nat n) { return n; };
  const Fn twice = [](Nat n) { return 2 * n; };
  const Fn succ = [](Nat n) { return n + 1; };
  const Fn square = [](Nat n) { return n * n; };
  const UpStream s_id = UpStream::identity(), s_twice = UpStream::ep(0, {}, {2}), s_succ = UpStream::ep(1, {}, {1});
  const UpStream s_odd = UpStream::ep(1, {}, {2});
  const OmegaSet evens = OmegaSet::evens(), full = OmegaSet::full();
  const auto is_even = [](Nat m) { return m % 2 == 0; };
  const auto any = [](Nat) { return true; };

  auto same_members = [&](const OmegaSet& x, const std::function<bool(Nat)>& member, Nat upto) {
    for (Nat m = 0; m < upto; ++m)
      if (x.contains(m) != member(m)) return false;
    return true;
  };
  auto in_range = [](const Fn& b) {
    return [b](Nat m) {
      for (Nat i = 0; b(i) <= m; ++i)
        if (b(i) == m) return true;
      return false;
    };
  };

  // range_set
  c.expect(same_members(range_set(s_twice), is_even, 500) && range_set(s_twice).kind() == OmegaSet::Kind::Word,
           "range_set(2n) = evens");
  c.expect(same_members(range_set(s_id), any, 500), "range_set(n) = ω");
  const OmegaSet sq = range_set(reindex_stream(s_id, Schedule::square()));
  c.expect(same_members(sq, in_range(square), 500) && sq.kind() == OmegaSet::Kind::Range, "range_set(n²) = squares");

  // reindex_stream
  c.expect(take(reindex_stream(s_id, Schedule::pairs()), 50) == take(twice, 50), "reindex(n, pairs) = 2n");
  c.expect(take(reindex_stream(s_id, Schedule::square()), 50) == take(square, 50), "reindex(n, squares) = n²");
  c.expect(take(reindex_stream(s_twice, Schedule::shift()), 50) == take([](Nat n) { return 2 * n + 2; }, 50),
           "reindex(2n, shift) = 2n+2");

  // scale_values and contract_set
  c.expect(take(scale_values(s_id, 3), 50) == take([](Nat n) { return 3 * n; }, 50), "scale(n, 3) = 3n");
  const MeasurableSet halves = contract_set(unit_blocks(evens), 2);
  bool halves_ok = true;
  for (Nat i = 0; i < 200; ++i) halves_ok &= halves.contains(Rational(i, 4)) == (i % 4 < 2);
  for (Nat n = 0; n < 50; ++n) halves_ok &= halves.measure_below(Rational(n)) == Rational(n, 2);
  c.expect(halves_ok, "contract(unit blocks on evens, 2) = ⋃[j, j+1/2)");
  c.expect(unit_blocks(evens).motif_measure() == 1 && halves.motif_measure() == Rational(1, 2),
           "contract halves the motif measure");

  // interval_partition_of and minima_set, against block labels computed by hand
  auto same_blocks = [](const Partition& p, const Fn& label, Nat upto) {
    for (Nat a = 0; a < upto; ++a)
      for (Nat b = a + 1; b <= upto; ++b) {
        std::set<Nat> seen;
        for (Nat m = a; m < b; ++m) seen.insert(label(m));
        if (p.blocks_meeting(a, b) != seen.size()) return false;
      }
    return true;
  };
  const Fn label_pairs = [](Nat m) { return m / 2; };
  const Fn label_merged = [](Nat m) { return m < 3 ? Nat{0} : (m - 1) / 2; };
  const Partition p_pairs = interval_partition_of(s_twice, false);
  const Partition p_merged = interval_partition_of(s_odd, true);
  c.expect(same_blocks(p_pairs, label_pairs, 40), "P_{2n} blocks [2i, 2i+2)");
  c.expect(same_blocks(p_merged, label_merged, 40), "merged P_{2n+1}: [0,3) then [2i+1, 2i+3)");
  c.expect(take(p_pairs.boundaries(), 30) == take(twice, 30) &&
               take(p_merged.boundaries(), 30) == take([](Nat n) { return 2 * n + 1; }, 30),
           "partition boundaries = g");
  auto minima_of = [](const Fn& label) {
    return [label](Nat m) { return m == 0 || label(m) != label(m - 1); };
  };
  c.expect(same_members(minima_set(p_pairs), minima_of(label_pairs), 300), "minima(P_{2n}) = evens");
  c.expect(same_members(minima_set(interval_partition_of(s_id, false)), any, 300), "minima(unit windows) = ω");
  c.expect(same_members(minima_set(p_merged), minima_of(label_merged), 300) &&
               take(minima_set(p_merged), 4) == std::vector<Nat>{0, 3, 5, 7},
           "minima(merged P_{2n+1}) = {0,3,5,7,…}");

  // sparse_selector: f′(0) = 0, f′(n+1) = f(f′(n)) + 2
  auto sparse_oracle = [](const Fn& f, Nat n) { return iterate(0, n, [&](Nat, Nat v) { return f(v) + 2; }); };
  c.expect(sparse_oracle(twice, 4) == std::vector<Nat>{0, 2, 6, 14} &&
               take(sparse_selector(s_twice), 4) == sparse_oracle(twice, 4),
           "sparse_selector(2n) = 0,2,6,14");
  c.expect(sparse_oracle(succ, 4) == std::vector<Nat>{0, 3, 6, 9} &&
               take(sparse_selector(s_succ), 4) == sparse_oracle(succ, 4),
           "sparse_selector(n+1) = 0,3,6,9");
  bool sparse_gap = true;
  for (const auto& [fs, f] : {std::pair{s_twice, twice}, std::pair{s_succ, succ}, std::pair{s_id, id}}) {
    const UpStream g = sparse_selector(fs);
    for (Nat n = 0; n < 12; ++n) sparse_gap &= f(g(n)) + 1 < g(n + 1);
  }
  c.expect(sparse_gap, "f(f′(n)) + 1 < f′(n+1)");

  // double_count_bound: f_X(n) = min{m > n : |[n,m) ∩ X| > 2k}, monotone envelope
  auto double_count_oracle = [](const std::function<bool(Nat)>& member, Nat k, Nat n) {
    auto fx = [&](Nat i) {
      Nat m = i + 1;
      while (brute_count(member, i, m) <= 2 * k) ++m;
      return m;
    };
    return iterate(fx(0), n, [&](Nat i, Nat prev) { return std::max(fx(i + 1), prev + 1); });
  };
  c.expect(take(double_count_bound(full, 1), 40) == double_count_oracle(any, 1, 40) &&
               double_count_oracle(any, 1, 40) == take([](Nat n) { return n + 3; }, 40),
           "double_count_bound(ω, 1) = n+3");
  c.expect(double_count_bound(evens, 1)(0) == 5 && take(double_count_bound(evens, 1), 40) == double_count_oracle(is_even, 1, 40),
           "double_count_bound(evens, 1)(0) = 5");
  const OmegaSet mixed = OmegaSet::word("0110", "0010110");
  const WordSpec& mw = *mixed.as_word();
  const auto mixed_member = [&](Nat m) { return word_bit(mw, m); };
  const UpStream g_mixed = double_count_bound(mixed, 2);
  bool increasing = true;
  for (Nat n = 0; n < 60; ++n) increasing &= g_mixed(n) < g_mixed(n + 1);
  c.expect(increasing && take(g_mixed, 40) == double_count_oracle(mixed_member, 2, 40),
           "double_count_bound strictly increasing");

  // recursive_spreader: h′(0) = 0, h′(n+1) = k+1 + h′(n) + h(h′(n))
  auto spreader_oracle = [](const Fn& h, Nat k, Nat n) {
    return iterate(0, n, [&](Nat, Nat v) { return k + 1 + v + h(v); });
  };
  c.expect(spreader_oracle(id, 1, 4) == std::vector<Nat>{0, 2, 6, 14} &&
               take(recursive_spreader(s_id, 1), 4) == spreader_oracle(id, 1, 4),
           "recursive_spreader(n, 1) = 0,2,6,14");
  const UpStream r1 = recursive_spreader(s_id, 1);
  c.expect(r1.diff(0) == 2 && r1.diff(1) == 4 && r1.diff(2) == 8, "recursive_spreader(n, 1) differences 2,4,8");
  c.expect(spreader_oracle(id, 0, 4) == std::vector<Nat>{0, 1, 3, 7} &&
               take(recursive_spreader(s_id, 0), 4) == spreader_oracle(id, 0, 4),
           "recursive_spreader(n, 0) = 0,1,3,7");

  // unit_blocks
  const MeasurableSet ub_evens = unit_blocks(evens);
  c.expect(ub_evens.motif() == std::vector<RInterval>{{Rational(0), Rational(1)}} && ub_evens.period() == 2,
           "unit_blocks(evens): motif [0,1), period 2");
  bool ub_full = true;
  for (Nat i = 0; i < 200; ++i) ub_full &= unit_blocks(full).contains(Rational(i, 3));
  c.expect(ub_full, "unit_blocks(ω) = half-line");
  bool ub_count = true;
  for (const auto& x : {evens, full, mixed}) {
    const MeasurableSet y = unit_blocks(x);
    for (Nat n = 0; n < 50; ++n) ub_count &= y.measure_below(Rational(2 * n)) == Rational(x.count_below(2 * n));
  }
  c.expect(ub_count, "μ([0,2n) ∩ unit_blocks(X)) = |X ∩ [0,2n)|");

  // greedy_mass_points: y_0 = 0, y_j = min{m : μ([y_{j−1}, m) ∩ Y) ≥ 2}
  using Mass = std::function<Rational(Nat, Nat)>;
  auto greedy_oracle = [](const Mass& mu, Nat n) {
    return iterate(0, n, [&](Nat, Nat prev) {
      Nat m = prev;
      while (mu(prev, m) < 2) ++m;
      return m;
    });
  };
  const Mass mu_line = [](Nat a, Nat b) { return Rational(b - a); };
  const Mass mu_evens = [&](Nat a, Nat b) { return Rational(brute_count(is_even, a, b)); };
  c.expect(take(greedy_mass_points(MeasurableSet::half_line()), 30) == greedy_oracle(mu_line, 30) &&
               greedy_oracle(mu_line, 30) == take(twice, 30),
           "greedy(half-line) = {0,2,4,…}");
  c.expect(take(greedy_mass_points(ub_evens), 30) == greedy_oracle(mu_evens, 30),
           "greedy(unit blocks on evens) = {0,3,7,11,…}");
  bool minimal = true;
  for (const auto& y : {ub_evens, MeasurableSet::half_line(), unit_blocks(mixed)}) {
    const OmegaSet pts = greedy_mass_points(y);
    for (Nat j = 1; j < 30; ++j) {
      const Rational a(pts.enumerate(j - 1)), b(pts.enumerate(j));
      minimal &= y.measure_in(a, b) >= 2 && y.measure_in(a, b - 1) < 2;
    }
  }
  c.expect(minimal, "greedy gaps carry mass 2 and are minimal");

  // id_majorant: h(0) = x_0, h(n) = max(x_{n²}, h(n−1)+n+1)
  auto majorant_oracle = [](const Fn& x, Nat n) {
    return iterate(x(0), n, [&](Nat i, Nat prev) { return std::max(x((i + 1) * (i + 1)), prev + i + 2); });
  };
  c.expect(majorant_oracle(id, 5) == std::vector<Nat>{0, 2, 5, 9, 16} &&
               take(id_majorant(full), 30) == majorant_oracle(id, 30),
           "id_majorant(ω) = 0,2,5,9,16");
  c.expect(majorant_oracle(twice, 4) == std::vector<Nat>{0, 2, 8, 18} &&
               take(id_majorant(evens), 30) == majorant_oracle(twice, 30),
           "id_majorant(evens) = 0,2,8,18");
  bool majorizes = true;
  for (const auto& x : {evens, full, mixed}) {
    const UpStream h = id_majorant(x);
    for (Nat n = 0; n < 40; ++n) majorizes &= x.enumerate(n * n) <= h(n) && h(n + 1) - h(n) > n;
  }
  c.expect(majorizes, "x_{n²} ≤ h(n) and h(n+1) − h(n) > n");

  // nested_accelerator: h(0) = 0, h(n+1) = f(h(n)+n+1)
  auto nested_oracle = [](const Fn& f, Nat n) { return iterate(0, n, [&](Nat i, Nat v) { return f(v + i + 1); }); };
  c.expect(nested_oracle(twice, 4) == std::vector<Nat>{0, 2, 8, 22} &&
               take(nested_accelerator(s_twice), 4) == nested_oracle(twice, 4),
           "nested_accelerator(2n) = 0,2,8,22");
  c.expect(nested_oracle(succ, 4) == std::vector<Nat>{0, 2, 5, 9} &&
               take(nested_accelerator(s_succ), 12) == nested_oracle(succ, 12),
           "nested_accelerator(n+1) = 0,2,5,9");
  bool nested_inc = true;
  const UpStream na = nested_accelerator(UpStream::ep(2, {5, 1}, {1, 3}));
  for (Nat n = 0; n < 12; ++n) nested_inc &= na(n) < na(n + 1);
  c.expect(nested_inc, "nested_accelerator strictly increasing");

  // bd_forall_spreader: f(0) = g(0), f(n+1) = g(f(n)) + n + 1
  auto bd_oracle = [](const Fn& g, Nat n) { return iterate(g(0), n, [&](Nat i, Nat v) { return g(v) + i + 1; }); };
  c.expect(bd_oracle(succ, 4) == std::vector<Nat>{1, 3, 6, 10} &&
               take(bd_forall_spreader(s_succ), 12) == bd_oracle(succ, 12),
           "bd_forall_spreader(n+1) = 1,3,6,10");
  c.expect(bd_oracle(twice, 4) == std::vector<Nat>{0, 1, 4, 11} &&
               take(bd_forall_spreader(s_twice), 4) == bd_oracle(twice, 4),
           "bd_forall_spreader(2n) = 0,1,4,11");
  // g(m) ≥ m + g(0) for increasing g, so each step gains at least n + 1 + g(0)
  bool bd_gap = true;
  for (const auto& [gs, g0] : {std::pair{s_succ, Nat{1}}, std::pair{s_twice, Nat{0}}, std::pair{s_odd, Nat{1}}}) {
    const UpStream f = bd_forall_spreader(gs);
    for (Nat n = 0; n < 8; ++n) bd_gap &= f(n + 1) - f(n) >= n + 1 + g0;
  }
  c.expect(bd_gap, "bd_forall_spreader step n gains at least n + 1 + g(0)");

  // interleaved_pair
  const auto [f0, g0] = interleaved_pair(0);
  c.expect(take(f0, 20) == take(twice, 20) && take(g0, 20) == take([](Nat n) { return 2 * n + 1; }, 20),
           "interleaved_pair canonical shape 2n, 2n+1");
  bool interleaves = true;
  std::set<std::string> shapes;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto [f, g] = interleaved_pair(seed);
    for (Nat n = 0; n <= 1000; ++n) interleaves &= f(n) < g(n) && g(n) < f(n + 1);
    shapes.insert(to_json(f).dump() + to_json(g).dump());
  }
  c.expect(interleaves, "f(n) < g(n) < f(n+1) for n ≤ 1000");
  c.expect(shapes.size() > 15, "distinct seeds give distinct cycles");
  return c.result();
}

// --- criterion 7 ---

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

struct Run {
  int exit = -1;
  std::string out;
};

Run run_cli(const fs::path& cli, const std::vector<std::string>& args) {
  std::string cmd = shell_quote(cli.string());
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json strip_times(Json report) {
  for (auto& s : report["suites"]) s.erase("wall_ms");
  return report;
}

Result cli_contract(const fs::path& cli, const fs::path& data, const fs::path& tmp) {
  Checks c;
  std::ifstream in(data / "golden.json");
  const Json golden = Json::parse(in);
  for (const auto& g : golden) {
    const auto args = g["args"].get<std::vector<std::string>>();
    const Run r = run_cli(cli, args);
    std::string name = "itl";
    for (const auto& a : args) name += " " + (a.size() > 24 ? a.substr(0, 24) + "…" : a);
    c.expect(r.exit == g["exit"].get<int>(), name + " exit " + std::to_string(r.exit));
    if (g.contains("stdout")) c.expect(r.out == g["stdout"].get<std::string>(), name + " stdout");
  }

  const std::vector<std::string> verify = {"verify", "--all", "--trials", "200", "--seed", "3", "--report"};
  auto with_report = [&](const std::string& file) {
    auto a = verify;
    a.push_back((tmp / file).string());
    return a;
  };
  const Run a = run_cli(cli, with_report("a.json")), b = run_cli(cli, with_report("b.json"));
  c.expect(a.exit == 0 && b.exit == 0, "verify --all exit codes");
  auto load = [&](const std::string& file) {
    std::ifstream f(tmp / file);
    return Json::parse(f, nullptr, false);
  };
  const Json ra = load("a.json"), rb = load("b.json");
  c.expect(!ra.is_discarded() && !rb.is_discarded() && strip_times(ra) == strip_times(rb),
           "two identical verify runs give identical reports");

  auto mutant = with_report("m.json");
  mutant.push_back("--mutant");
  c.expect(run_cli(cli, mutant).exit == 1, "verify --all --mutant exit 1");

  for (const std::string file : {"a.json", "m.json"}) {
    const std::string cmd = std::string(ITL_PYTHON) + " " + shell_quote((data / "validate_report.py").string()) + " " +
                            shell_quote((data / "suite_report.schema.json").string()) + " " +
                            shell_quote((tmp / file).string());
    const int status = std::system(cmd.c_str());
    c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, file + " matches the report schema");
  }
  return c.result();
}

}  // namespace

int main() {
  const fs::path cli = ITL_CLI_PATH;
  const fs::path data = ITL_CLI_DATA_DIR;
  const fs::path tmp = fs::temp_directory_path() / ("itl_acceptance_" + std::to_string(getpid()));
  fs::create_directories(tmp);

  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"kernel soundness", kernel_soundness},
      {"connection suites", [&] { return connection_suites(cli, tmp); }},
      {"mutant detection", mutant_detection},
      {"degenerate cases", degenerate_cases},
      {"monotonicity shadows", monotonicity_shadows},
      {"construction contracts", construction_contracts},
      {"CLI contract", [&] { return cli_contract(cli, data, tmp); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    all &= r.ok;
    std::cout << (r.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << r.detail
              << ")" << std::endl;
  }
  fs::remove_all(tmp);
  return all ? 0 : 1;
}
