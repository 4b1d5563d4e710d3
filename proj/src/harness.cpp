#include "itl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "itl/constructions.hpp"
#include "itl/error.hpp"
#include "itl/profile.hpp"
#include "itl/random.hpp"

namespace itl {

namespace {

using Kind = DomainSpec::Kind;

GenParams with_seed(GenParams p, std::uint64_t seed) {
  p.seed = seed;
  return p;
}

std::vector<Nat> draw_diffs(SplitMix& rng, Nat count, Nat lo, Nat hi) {
  std::vector<Nat> v(count);
  for (auto& d : v) d = rng.between(lo, hi);
  return v;
}

UpStream ramp(SplitMix& rng) { return UpStream::ramp(rng.between(0, 4), rng.between(1, 3), rng.between(1, 3)); }

Partition random_partition(SplitMix& rng, const GenParams& p) {
  const UpStream base = generate_ep(with_seed(p, rng()), 1);
  const auto* e = base.as_ep();
  // widen windows so patterns have room for several blocks
  std::vector<Nat> prefix = e->prefix, cycle = e->cycle;
  for (auto& d : prefix) d += rng.between(0, 2);
  for (auto& d : cycle) d += rng.between(0, 2);
  auto pattern = [&rng](Nat len) {
    const Nat blocks = rng.between(1, std::min<Nat>(len, 3));
    WindowPattern w(len);
    for (auto& l : w) l = static_cast<std::uint32_t>(rng.between(0, blocks - 1));
    return w;
  };
  std::vector<WindowPattern> pp, cp;
  for (Nat d : prefix) pp.push_back(pattern(d));
  for (Nat d : cycle) cp.push_back(pattern(d));
  return Partition::make(UpStream::ep(e->start, prefix, cycle), std::move(pp), std::move(cp), rng.between(0, 1));
}

MeasurableSet random_measurable(SplitMix& rng) {
  const Nat period = rng.between(1, 4);
  std::vector<RInterval> motif;
  for (Nat cell = 0; cell < 2 * period; ++cell)
    if (rng.between(0, 2) == 0) motif.push_back({Rational(cell, 2), Rational(cell + 1, 2)});
  if (motif.empty()) {
    const Nat cell = rng.between(0, 2 * period - 1);
    motif.push_back({Rational(cell, 2), Rational(cell + 1, 2)});
  }
  const Rational p0(rng.between(0, 2), 2);
  std::vector<RInterval> prefix;
  if (p0 > 0 && rng.coin()) prefix.push_back({Rational(0), p0});
  return MeasurableSet::make(std::move(prefix), normalize_intervals(std::move(motif)), p0, Rational(period));
}

/// n -> f(m·n + c) as a set.
OmegaSet sub_range(const UpStream& f, Nat m, Nat c) { return range_set(reindex_stream(f, Schedule{false, m, c})); }

/// A sparse sub-range of f: at most one point per f-interval.
OmegaSet sparse_range(const UpStream& f, SplitMix& rng, bool need_gap) {
  const bool analytic = f.as_ep() || f.form();
  Nat m = need_gap ? rng.between(2, 3) : rng.between(1, 3);
  if (!analytic && !need_gap) m = 1;
  return sub_range(f, m, rng.between(0, m - 1));
}

UpStream plus_one(const UpStream& f) {
  if (auto e = f.as_ep()) return UpStream::ep(e->start + 1, e->prefix, e->cycle);
  const auto cls = f.classify();
  ProgramSpec p;
  p.descriptor = canonical(Json{{"kind", "program"}, {"id", "plus_one"}, {"of", to_json(f)}});
  p.initial = checked_add(f(0), 1);
  p.step = [f](Nat n, Nat) { return checked_add(f(n), 1); };
  p.facts = {cls.min_diff, cls.gt_id, cls.divergent, cls.superlinear};
  if (auto q = f.form()) {
    for (auto& v : q->c) v += 1;
    p.form = q;
  }
  return UpStream::program(std::move(p));
}

std::optional<Nat> target_k(const TukeyConnection& c) {
  const auto params = parse_id(c.target.id()).second;
  if (!params.count("k")) return std::nullopt;
  return param_nat(params, "k", 0);
}

Nat ceil_nat(const Rational& r) { return static_cast<Nat>(ceil(r)); }

/// The certified right-hand object for Ψ−(x); nullopt when no such object exists.
std::optional<Object> certify(const TukeyConnection& c, Object& x, SplitMix& rng, std::string& reason) {
  const std::string& id = c.id;
  if (id == "D_to_id_forall") {
    // one point per cycle of length L > α keeps the counts at slope α/L < 1
    const Nat alpha = rng.between(1, 3);
    x = UpStream::ramp(rng.between(0, 4), alpha, rng.between(1, 3));
    const Nat len = rng.between(alpha + 1, alpha + 3);
    std::vector<bool> cycle(len, false), prefix(rng.between(0, 3), false);
    cycle[rng.between(0, len - 1)] = true;
    reason = "one point per cycle of length > α";
    return OmegaSet::word(prefix, cycle);
  }
  if (id == "M_scaling_forall" || id == "M_scaling_exists") {
    const Rational delta = param_rational(c.params, "delta", Rational(1));
    const Nat d = ceil_nat(Rational(1) / delta);
    const auto fp = std::get<UpStream>(c.minus.apply(x));
    const Nat m = rng.between(1, 3);
    const auto spaced = reindex_stream(fp, Schedule{false, m, rng.between(0, m - 1)});
    reason = "one block of measure 1/" + std::to_string(d) + " per interval";
    return contract_set(unit_blocks(range_set(scale_values(spaced, d))), d);
  }
  if (id == "L_forall_dual_to_dualD") {
    reason = "h = g_X + 1 exceeds g_X everywhere";
    return plus_one(std::get<UpStream>(c.minus.apply(x)));
  }

  const Sort ys = c.y_domain().sort();
  if (ys == Sort::Set) {
    const std::string rel = c.target.relation_id();
    const auto k = target_k(c);
    if (rel == "forall_k" && k == Nat{0}) return std::nullopt;  // no infinite set satisfies it
    const bool need_gap = (rel == "exists_k" && k == Nat{0}) || c.y_domain().kind == Kind::CoinfiniteSets;
    reason = "at most one point per interval of Ψ−(x)";
    return sparse_range(std::get<UpStream>(c.minus.apply(x)), rng, need_gap);
  }
  const auto fp = std::get<UpStream>(c.minus.apply(x));
  if (ys == Sort::Partition) {
    const Nat m = rng.between(1, 3);
    reason = "every interval of Ψ−(x) lies in one block";
    return interval_partition_of(reindex_stream(fp, Schedule{false, m, rng.between(0, m - 1)}), rng.coin());
  }
  if (ys == Sort::Measurable) {
    reason = "one unit block per interval";
    return unit_blocks(sparse_range(fp, rng, false));
  }
  // stream targets: D, D_perp, I, I_perp
  const bool negated = c.target.dualized();
  const Nat m = negated ? rng.between(2, 3) : rng.between(1, 3);
  reason = negated ? "y grows through at least two intervals per step" : "y is a subsequence of Ψ−(x)";
  return reindex_stream(fp, Schedule{false, m, rng.between(0, 2)});
}

struct Trial {
  Status status = Status::Inconclusive;
  bool premise_unknown = false;
  bool certified = false;
  Json witness;
};

Trial run_trial(const TukeyConnection& c, Nat index, std::uint64_t seed, const CheckPolicy& policy) {
  Trial t;
  const std::uint64_t s = mix_seed(seed, index);
  try {
    const Instance inst = index % 2 == 1 ? certified_instance(c, s) : random_instance(c, s);
    t.certified = inst.certificate.has_value();
    const auto out = check_connection(c, inst.x, inst.y, policy, t.certified);
    t.status = out.status;
    t.premise_unknown = out.premise_unknown;
    if (t.status == Status::Fail) {
      t.witness = Json{{"trial", index},          {"certified", t.certified},
                       {"x", object_to_json(inst.x)}, {"y", object_to_json(inst.y)},
                       {"premise", to_json(out.premise)}, {"conclusion", to_json(out.conclusion)}};
    }
  } catch (const ProgramDivergence&) {
    t.status = Status::Inconclusive;
  } catch (const FragmentUnsupported&) {
    t.status = Status::Inconclusive;
  }
  return t;
}

Nat worker_count(Nat requested, Nat trials) {
  Nat n = requested;
  if (n == 0) {
    n = std::max<Nat>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ITL_THREADS")) {
      const long v = std::atol(env);
      if (v > 0) n = std::min<Nat>(n, static_cast<Nat>(v));
    }
  }
  return std::max<Nat>(1, std::min(n, trials));
}

std::string params_text(const Params& p) {
  std::string out;
  for (const auto& [k, v] : p) out += (out.empty() ? "" : ";") + k + "=" + v;
  return out;
}

}  // namespace

UpStream generate_ep(const GenParams& p, Nat min_diff) {
  if (p.max_cycle == 0 || p.max_diff == 0) throw BadParams("cycle length and difference bounds must be positive");
  SplitMix rng(p.seed);
  const Nat hi = min_diff + p.max_diff - 1;
  auto prefix = draw_diffs(rng, rng.between(0, p.max_prefix), min_diff, hi);
  auto cycle = draw_diffs(rng, rng.between(1, p.max_cycle), min_diff, hi);
  return UpStream::ep(rng.between(0, 3), std::move(prefix), std::move(cycle));
}

OmegaSet generate_word(const GenParams& p, bool coinfinite) {
  if (p.max_cycle == 0) throw BadParams("cycle length bound must be positive");
  SplitMix rng(p.seed);
  std::vector<bool> prefix(rng.between(0, p.max_prefix)), cycle(rng.between(1, p.max_cycle + 2));
  for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = rng.coin();
  for (std::size_t i = 0; i < cycle.size(); ++i) cycle[i] = rng.coin();
  cycle[rng.between(0, cycle.size() - 1)] = true;
  if (coinfinite) {
    if (cycle.size() == 1) cycle.push_back(false);
    std::size_t z = rng.between(0, cycle.size() - 1);
    if (std::count(cycle.begin(), cycle.end(), true) == 1 && cycle[z]) z = (z + 1) % cycle.size();
    cycle[z] = false;
  }
  return OmegaSet::word(std::move(prefix), std::move(cycle));
}

Object generate(const DomainSpec& d, const GenParams& p) {
  SplitMix rng(p.seed);
  const GenParams sub = with_seed(p, rng());
  const Nat roll = rng.between(0, 19);
  switch (d.kind) {
    case Kind::Streams:
      if (roll < 2) return UpStream::identity();
      if (roll < 4) return UpStream::ep(rng.between(0, 3), {}, {rng.between(1, p.max_diff)});
      return generate_ep(sub, 1);
    case Kind::StreamsGtK: return generate_ep(sub, d.k + 1);
    case Kind::StreamsGtId:
      if (roll < 15) return ramp(rng);
      return id_majorant(generate_word(sub));
    case Kind::StreamsDivergent:
      if (roll < 12) return ramp(rng);
      return reindex_stream(generate_ep(sub, 1), Schedule::square());
    case Kind::Sets:
      if (roll < 3) return OmegaSet::full();
      if (roll < 5) return OmegaSet::evens();
      return generate_word(sub);
    case Kind::CoinfiniteSets:
      if (roll < 2) return OmegaSet::evens();
      return generate_word(sub, true);
    case Kind::Partitions: return random_partition(rng, p);
    case Kind::Measurables: return random_measurable(rng);
  }
  throw BadParams("unknown domain");
}

OracleReport horizon_oracle(const UpStream& f, const Object& rhs, const std::string& relation_id,
                            const Params& params, Nat horizon) {
  if (horizon == 0) throw BadParams("horizon must be positive");
  if (!is_relation_id(relation_id)) throw UnknownId(relation_id);
  const bool exists = relation_id.find("exists") != std::string::npos;
  const Nat k = param_nat(params, "k", 0);
  OracleReport r;
  auto record = [&](Rational v, bool holds) {
    r.values.push_back(std::move(v));
    if (holds == exists) ++r.hits;
  };
  auto need = [&](Sort s) {
    if (sort_of(rhs) != s) throw TypeMismatch(relation_id + " needs a " + to_string(s));
  };
  for (Nat n = 0; n < horizon; ++n) {
    const Nat a = f(n), b = f(n + 1);
    if (relation_id == "forall_k" || relation_id == "exists_k" || relation_id.starts_with("id_") ||
        relation_id.starts_with("bd_")) {
      need(Sort::Set);
      const Nat c = std::get<OmegaSet>(rhs).count_in(a, b);
      const bool bounded = relation_id.starts_with("bd_");
      record(Rational(c), bounded ? !exists : c <= (relation_id.starts_with("id_") ? n : k));
    } else if (relation_id.starts_with("col_")) {
      need(Sort::Partition);
      const Nat c = std::get<Partition>(rhs).blocks_meeting(a, b);
      record(Rational(c), c <= k);
    } else if (relation_id.starts_with("measure_")) {
      need(Sort::Measurable);
      const Rational eps = param_rational(params, "eps", Rational(1));
      Rational m = std::get<MeasurableSet>(rhs).measure_in(Rational(a), Rational(b));
      const bool holds = m <= eps;
      record(std::move(m), relation_id == "measure_sum" || relation_id == "measure_vec" ? !exists : holds);
    } else if (relation_id == "leq_star") {
      need(Sort::Stream);
      const Nat g = std::get<UpStream>(rhs)(n);
      record(Rational(g) - Rational(a), a <= g);
    } else {
      need(Sort::Stream);
      const bool nests = nests_at(f, std::get<UpStream>(rhs), n);
      record(Rational(nests ? 1 : 0), nests);
    }
  }
  r.verdict = Verdict::unknown(horizon, r.hits);
  return r;
}

Instance random_instance(const TukeyConnection& c, std::uint64_t seed) {
  SplitMix rng(seed);
  const GenParams gp;
  Object x = generate(c.x_domain(), with_seed(gp, rng()));
  Object y = generate(c.y_domain(), with_seed(gp, rng()));
  return {std::move(x), std::move(y), std::nullopt};
}

Instance certified_instance(const TukeyConnection& c, std::uint64_t seed) {
  SplitMix rng(seed);
  Object x = generate(c.x_domain(), with_seed(GenParams{}, rng()));
  std::string reason;
  auto y = certify(c, x, rng, reason);
  if (!y) {
    auto r = random_instance(c, rng());
    return r;
  }
  return {std::move(x), std::move(*y), Certificate{c.full_id(), reason, Verdict::yes()}};
}

Json SuiteReport::to_json(bool with_time) const {
  Json p = Json::object();
  for (const auto& [k, v] : params) p[k] = v;
  Json j{{"lemma", lemma},
         {"params", p},
         {"mutant", mutant},
         {"trials", trials},
         {"pass", count(Status::Pass)},
         {"evidence", count(Status::PassWithEvidence)},
         {"vacuous", count(Status::Vacuous)},
         {"vacuous_unknown", vacuous_unknown},
         {"fail", count(Status::Fail)},
         {"inconclusive", count(Status::Inconclusive)},
         {"certified", certified},
         {"witnesses", witnesses},
         {"seed", seed}};
  if (with_time) j["wall_ms"] = wall_ms;
  return j;
}

std::string SuiteReport::csv_header() {
  return "lemma,params,mutant,trials,pass,evidence,vacuous,vacuous_unknown,fail,inconclusive,seed";
}

std::string SuiteReport::csv_row() const {
  std::ostringstream os;
  os << lemma << ',' << params_text(params) << ',' << (mutant ? 1 : 0) << ',' << trials << ','
     << count(Status::Pass) << ',' << count(Status::PassWithEvidence) << ',' << count(Status::Vacuous) << ','
     << vacuous_unknown << ',' << count(Status::Fail) << ',' << count(Status::Inconclusive) << ',' << seed;
  return os.str();
}

SuiteReport run_suite(const std::string& connection_id, const SuiteOptions& options) {
  if (options.trials == 0) throw BadParams("trials must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  auto [name, params] = parse_id(connection_id);
  for (const auto& [k, v] : options.params) params[k] = v;
  const TukeyConnection conn = options.mutant ? build_mutant(name, params) : build_connection(name, params);

  std::vector<Trial> results(options.trials);
  std::atomic<Nat> next{0};
  auto work = [&] {
    for (Nat i; (i = next.fetch_add(1)) < options.trials;) results[i] = run_trial(conn, i, options.seed, options.policy);
  };
  const Nat workers = worker_count(options.threads, options.trials);
  std::vector<std::thread> pool;
  for (Nat w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  SuiteReport r;
  r.lemma = name;
  r.params = conn.params;
  r.mutant = options.mutant;
  r.seed = options.seed;
  r.trials = options.trials;
  for (auto& t : results) {
    ++r.counts[static_cast<std::size_t>(t.status)];
    if (t.status == Status::Vacuous && t.premise_unknown) ++r.vacuous_unknown;
    if (t.certified) ++r.certified;
    if (t.status == Status::Fail && r.witnesses.size() < 10) r.witnesses.push_back(std::move(t.witness));
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

const std::vector<std::string>& search_predicates() {
  static const std::vector<std::string> ids = {"both_col1", "forall0_holds", "fail_fact_monotone"};
  return ids;
}

SearchResult search_counterexample(const std::string& predicate, Nat budget, std::uint64_t seed) {
  SearchResult r{predicate, false, 0, nullptr};
  const GenParams gp{4, 5, 5, 0};
  if (predicate == "both_col1") {
    const auto [f, g] = interleaved_pair(seed);
    for (; r.tried < budget; ++r.tried) {
      SplitMix rng(mix_seed(seed, r.tried));
      const Partition p = random_partition(rng, gp);
      if (eval_colored_relation(f, p, 1, Quant::Forall).is_true() &&
          eval_colored_relation(g, p, 1, Quant::Forall).is_true()) {
        r.found = true;
        r.witness = Json{{"f", to_json(f)}, {"g", to_json(g)}, {"partition", to_json(p)}};
        return r;
      }
    }
    return r;
  }
  if (predicate == "forall0_holds") {
    for (; r.tried < budget; ++r.tried) {
      SplitMix rng(mix_seed(seed, r.tried));
      const auto f = generate_ep(with_seed(gp, rng()));
      const auto x = std::get<OmegaSet>(generate({Kind::Sets}, with_seed(gp, rng())));
      if (eval_count_relation(f, x, ThresholdSpec::constant(0), Quant::Forall).is_true()) {
        r.found = true;
        r.witness = Json{{"f", to_json(f)}, {"x", to_json(x)}};
        return r;
      }
    }
    return r;
  }
  if (predicate == "fail_fact_monotone") {
    for (; r.tried < budget; ++r.tried) {
      SplitMix rng(mix_seed(seed, r.tried));
      const auto f = generate_ep(with_seed(gp, rng()));
      const auto x = std::get<OmegaSet>(generate({Kind::Sets}, with_seed(gp, rng())));
      const Nat k = rng.between(0, 2), l = k + rng.between(1, 2);
      const Quant q = rng.coin() ? Quant::Forall : Quant::Exists;
      if (eval_count_relation(f, x, ThresholdSpec::constant(k), q).is_true() &&
          eval_count_relation(f, x, ThresholdSpec::constant(l), q).is_false()) {
        r.found = true;
        r.witness = Json{{"f", to_json(f)}, {"x", to_json(x)}, {"k", k}, {"l", l}};
        return r;
      }
    }
    return r;
  }
  throw UnknownId(predicate);
}

}  // namespace itl
