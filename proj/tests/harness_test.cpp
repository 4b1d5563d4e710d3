#include <gtest/gtest.h>

#include "itl/constructions.hpp"
#include "itl/error.hpp"
#include "itl/harness.hpp"
#include "itl/profile.hpp"
#include "itl/random.hpp"

using namespace itl;

namespace {

using Kind = DomainSpec::Kind;

GenParams seeded(std::uint64_t s) {
  GenParams p;
  p.seed = s;
  return p;
}

}  // namespace

TEST(Generate, ContractsAndDeterminism) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    GenParams p = seeded(s);
    p.max_diff = 3;
    const auto f = generate_ep(p);
    for (Nat d : f.as_ep()->cycle) EXPECT_TRUE(d >= 1 && d <= 3);
    EXPECT_TRUE(f.same_representation(generate_ep(p)));

    const auto x = generate_word(seeded(s));
    EXPECT_GT(x.ones_per_cycle(), 0u);
    const auto y = generate_word(seeded(s), true);
    EXPECT_EQ(y.co_infinite(), Tri::True);
    EXPECT_GT(y.ones_per_cycle(), 0u);

    const auto g = std::get<UpStream>(generate({Kind::StreamsGtK, 2}, seeded(s)));
    EXPECT_EQ(g.classify().in_gt_k(2), Tri::True);
    EXPECT_EQ(std::get<UpStream>(generate({Kind::StreamsGtId}, seeded(s))).classify().gt_id, Tri::True);
    EXPECT_EQ(std::get<UpStream>(generate({Kind::StreamsDivergent}, seeded(s))).classify().divergent, Tri::True);

    for (auto k : {Kind::Partitions, Kind::Measurables, Kind::Sets, Kind::Streams}) {
      const auto a = generate({k}, seeded(s)), b = generate({k}, seeded(s));
      EXPECT_EQ(object_to_json(a).dump(), object_to_json(b).dump());
    }
  }
  GenParams bad;
  bad.max_cycle = 0;
  EXPECT_THROW(generate_ep(bad), BadParams);
}

TEST(Oracle, Examples) {
  const auto r = horizon_oracle(UpStream::ep(0, {}, {2}), OmegaSet::evens(), "forall_k", {{"k", "1"}}, 100);
  EXPECT_EQ(r.hits, 0u);
  EXPECT_EQ(r.values.size(), 100u);
  const auto w = horizon_oracle(UpStream::identity(), OmegaSet::evens(), "exists_k", {{"k", "0"}}, 100);
  EXPECT_EQ(w.hits, 50u);
  EXPECT_TRUE(w.verdict.is_unknown());
  EXPECT_EQ(w.verdict.horizon, 100u);
  EXPECT_THROW(horizon_oracle(UpStream::identity(), OmegaSet::evens(), "nope", {}, 10), UnknownId);
  EXPECT_THROW(horizon_oracle(UpStream::identity(), OmegaSet::evens(), "forall_k", {}, 0), BadParams);
}

TEST(Oracle, AgreesWithProfiles) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    SplitMix rng(s);
    const auto f = generate_ep(seeded(rng()));
    const auto x = generate_word(seeded(rng()));
    const auto p = interval_count_profile(f, x);
    const Nat h = p.transient() + 3 * p.period();
    const auto o = horizon_oracle(f, x, "forall_k", {}, h + 1);
    for (Nat n = 0; n <= h; ++n) ASSERT_EQ(Rational(p.at(n)), o.values[n]) << "seed " << s << " n " << n;
    // a decided verdict is never contradicted on the checked window
    const auto v = eval_count_relation(f, x, ThresholdSpec::constant(1), Quant::Forall);
    const auto late = horizon_oracle(f, x, "forall_k", {{"k", "1"}}, h + 1);
    if (v.is_true())
      for (Nat n = p.transient(); n <= h; ++n) EXPECT_LE(late.values[n], Rational(1));
  }
}

TEST(Certified, PremisesReverify) {
  for (const auto& info : connection_registry()) {
    const auto c = build_connection(info.id);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto inst = certified_instance(c, s);
      if (!inst.certificate) continue;
      const auto v = c.target.evaluate(c.minus.apply(inst.x), inst.y);
      EXPECT_FALSE(v.is_false()) << info.id << " seed " << s;
      EXPECT_TRUE(v.is_true()) << info.id << " seed " << s << " " << v.to_string();
    }
  }
}

TEST(Certified, OnePointPerInterval) {
  const auto c = build_connection("D_to_bd_forall");
  const auto inst = certified_instance(c, 3);
  ASSERT_TRUE(inst.certificate);
  const auto f = std::get<UpStream>(c.minus.apply(inst.x));
  const auto o = horizon_oracle(f, inst.y, "bd_forall", {}, 6);
  for (const auto& v : o.values) EXPECT_EQ(v, Rational(1));
  EXPECT_TRUE(c.target.evaluate(f, inst.y).is_true());

  const auto d = build_connection("L_forall_dual_to_dualD");
  const auto di = certified_instance(d, 4);
  const auto g = std::get<UpStream>(d.minus.apply(di.x));
  const auto h = std::get<UpStream>(di.y);
  for (Nat n = 0; n < 50; ++n) EXPECT_EQ(h(n), g(n) + 1);
}

TEST(Suite, DeterministicAcrossThreads) {
  SuiteOptions a;
  a.trials = 200;
  a.seed = 7;
  a.threads = 1;
  SuiteOptions b = a;
  b.threads = 4;
  const auto ra = run_suite("vojtas_forall_k{k=2}", a);
  const auto rb = run_suite("vojtas_forall_k{k=2}", b);
  EXPECT_EQ(ra.to_json(false).dump(), rb.to_json(false).dump());
  EXPECT_EQ(ra.count(Status::Fail), 0u);
  Nat total = 0;
  for (Nat c : ra.counts) total += c;
  EXPECT_EQ(total, ra.trials);
  EXPECT_EQ(ra.params.at("k"), "2");
}

TEST(Suite, MutantDetected) {
  SuiteOptions o;
  o.trials = 400;
  o.mutant = true;
  const auto r = run_suite("vojtas_forall_k", o);
  EXPECT_GT(r.count(Status::Fail), 0u);
  EXPECT_FALSE(r.witnesses.empty());
  EXPECT_TRUE(r.witnesses[0].contains("x"));
  o.trials = 0;
  EXPECT_THROW(run_suite("vojtas_forall_k", o), BadParams);
}

TEST(Search, Exhausted) {
  for (const auto& p : search_predicates()) {
    const auto r = search_counterexample(p, 300, 11);
    EXPECT_FALSE(r.found) << p;
    EXPECT_EQ(r.tried, 300u);
  }
  EXPECT_THROW(search_counterexample("nope", 1, 1), UnknownId);
}
