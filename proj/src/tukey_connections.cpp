#include <algorithm>

#include "itl/constructions.hpp"
#include "itl/error.hpp"
#include "itl/tukey.hpp"

namespace itl {

namespace {

template <class T>
const T& expect(const Object& o) {
  if (auto p = std::get_if<T>(&o)) return *p;
  throw TypeMismatch(std::string("map applied to ") + to_string(sort_of(o)));
}

template <class In, class Fn>
TukeyMap lift(std::string name, std::string closure, Fn fn) {
  return {std::move(name), [fn](const Object& o) -> Object { return fn(expect<In>(o)); }, std::move(closure)};
}

TukeyMap identity_map() { return {"identity", [](const Object& o) { return o; }, "identity; preserves every kind"}; }

TukeyMap reindex_map(const Schedule& s, const std::string& name) {
  const std::string closure =
      s.squares ? "reindex squares; EPDiff → Program with form, Program → Program" : "linear reindex; preserves EPDiff and Ramp";
  return lift<UpStream>(name, closure, [s](const UpStream& f) { return reindex_stream(f, s); });
}

TukeyMap enumeration_map(const Schedule& s, const std::string& name) {
  return lift<OmegaSet>(name, "sample_enumeration; word → EPDiff, range → Program",
                        [s](const OmegaSet& x) { return sample_enumeration(x, s); });
}

TukeyMap full_set_map() {
  return lift<OmegaSet>("constant ω", "constant word", [](const OmegaSet&) { return OmegaSet::full(); });
}

TukeyMap thicken_map(Nat r) {
  return lift<OmegaSet>("thicken(" + std::to_string(r) + ")", "words only",
                        [r](const OmegaSet& x) { return thicken(x, r); });
}

OmegaSet word_union(const OmegaSet& a, const OmegaSet& b) {
  const auto wa = a.to_word(), wb = b.to_word();
  if (!wa || !wb) throw FragmentUnsupported("union needs ultimately periodic sets");
  const Nat pre = std::max(wa->prefix_length(), wb->prefix_length());
  const Nat len = lcm(wa->cycle_length(), wb->cycle_length());
  std::vector<bool> prefix, cycle;
  for (Nat m = 0; m < pre; ++m) prefix.push_back(wa->contains(m) || wb->contains(m));
  for (Nat m = pre; m < pre + len; ++m) cycle.push_back(wa->contains(m) || wb->contains(m));
  return OmegaSet::word(std::move(prefix), std::move(cycle));
}

/// Splits every block of every window into a left and a right half.
Partition split_blocks(const Partition& p) {
  auto split = [](const WindowPattern& pat) {
    WindowPattern out(pat.size());
    for (Nat t = 0; t < pat.size(); ++t) out[t] = pat[t] * 2 + (2 * t >= pat.size() ? 1 : 0);
    return out;
  };
  std::vector<WindowPattern> prefix, cycle;
  for (const auto& w : p.prefix_patterns()) prefix.push_back(split(w));
  for (const auto& w : p.cycle_patterns()) cycle.push_back(split(w));
  return Partition::make(p.boundaries(), std::move(prefix), std::move(cycle), p.merge_prefix());
}

std::string quant_name(Quant q) { return q == Quant::Forall ? "forall" : "exists"; }

std::string count_id(const std::string& family, Quant q, Nat k) {
  return family + "_" + quant_name(q) + "_k{k=" + std::to_string(k) + "}";
}

struct Builder {
  ConnectionInfo info;
  std::vector<std::string> keys;
  std::function<TukeyConnection(const Params&, bool mutant)> build;
};

TukeyConnection make(const std::string& source, const std::string& target, TukeyMap minus, TukeyMap plus) {
  TukeyConnection c{"", {}, get_system(source), get_system(target), std::move(minus), std::move(plus), "", "", {}, false};
  c.closure_note = "Ψ−: " + c.minus.closure + "; Ψ+: " + c.plus.closure;
  return c;
}

Nat need_k(const Params& p, Nat fallback, Nat min, const std::string& why) {
  const Nat k = param_nat(p, "k", fallback);
  if (k < min) throw BadParams("k must be at least " + std::to_string(min) + " (" + why + ")");
  return k;
}

std::vector<Builder> make_builders() {
  std::vector<Builder> v;
  auto add = [&v](std::string id, Params defaults, std::string anchor, std::string mutant,
                  std::function<TukeyConnection(const Params&, bool)> build) {
    std::vector<std::string> keys;
    for (const auto& [k, _] : defaults) keys.push_back(k);
    v.push_back({{std::move(id), std::move(defaults), std::move(anchor), std::move(mutant)}, keys, std::move(build)});
  };

  add("vojtas_forall_k", {{"k", "1"}}, "h_X(n) = x_{(k+1)n}", "sample at arith(k)",
      [](const Params& p, bool mutant) {
        const Nat k = need_k(p, 1, 1, "the sampling needs k >= 1");
        const Nat s = mutant ? k : k + 1;
        return make("D", count_id("R", Quant::Forall, k), identity_map(),
                    enumeration_map(Schedule::arith(s), "sample_enumeration(arith(" + std::to_string(s) + "))"));
      });

  add("exists1_to_dualD", {}, "Φ+(b) = b[ω]", "Ψ+ forgets b and returns ω", [](const Params&, bool mutant) {
    return make("R_exists_k{k=1}", "D_perp", identity_map(),
                mutant ? lift<UpStream>("constant ω", "constant word", [](const UpStream&) { return OmegaSet::full(); })
                       : lift<UpStream>("range_set", "EPDiff → word, otherwise range",
                                        [](const UpStream& b) { return range_set(b); }));
  });

  add("Iperp_to_exists_k", {{"k", "1"}}, "f_X(n) = e_X(n·(k+1))", "sample at arith(k)", [](const Params& p, bool mutant) {
    const Nat k = need_k(p, 1, 1, "the sampling needs k >= 1");
    const Nat s = mutant ? k : k + 1;
    return make("I_perp", count_id("R", Quant::Exists, k), identity_map(),
                enumeration_map(Schedule::arith(s), "sample_enumeration(arith(" + std::to_string(s) + "))"));
  });

  auto glue = [](const std::string& family) {
    return [family](const Params&, bool mutant) {
      return make(count_id(family, Quant::Exists, 0), count_id(family, Quant::Exists, 1),
                  mutant ? reindex_map(Schedule::arith(1), "reindex(stride 1)") : reindex_map(Schedule::pairs(), "reindex(pairs)"),
                  identity_map());
    };
  };
  add("exists0_glue", {}, "glue together every pair of intervals", "reindex with stride 1", glue("R"));
  add("L_exists0_glue", {}, "glue together every pair of intervals (co-infinite sets)", "reindex with stride 1", glue("L"));

  auto partition_map = [](bool merge, bool mutant) {
    const std::string name = std::string("interval_partition_of(") + (merge ? "merge_first" : "plain") + ")";
    return lift<UpStream>(mutant ? name + " split at midpoints" : name, "EPDiff → Partition",
                          [merge, mutant](const UpStream& g) {
                            auto p = interval_partition_of(g, merge);
                            return mutant ? split_blocks(p) : p;
                          });
  };
  add("col2_forall_to_I", {}, "P_g = { [g(i), g(i+1)) : i < ω }", "blocks split at window midpoints",
      [partition_map](const Params&, bool mutant) {
        return make("Rcol_forall_k{k=2}", "I", identity_map(), partition_map(false, mutant));
      });
  add("col2_exists_to_Iperp", {}, "A_0 = [0, g(1)), A_i = [g(i), g(i+1))", "blocks split at window midpoints",
      [partition_map](const Params&, bool mutant) {
        return make("Rcol_exists_k{k=2}", "I_perp", identity_map(), partition_map(true, mutant));
      });

  for (Quant q : {Quant::Forall, Quant::Exists}) {
    add("Rk_to_colk_" + quant_name(q), {{"k", "2"}}, "Ψ+(P) = {min(P_n) : n∈ω}", "minima together with maxima",
        [q](const Params& p, bool mutant) {
          const Nat k = need_k(p, 2, 2, "stated for k >= 2");
          return make(count_id("R", q, k), count_id("Rcol", q, k), identity_map(),
                      mutant ? lift<Partition>("minima ∪ maxima", "Partition → word",
                                               [](const Partition& pt) {
                                                 return word_union(pt.extremes(false), pt.extremes(true));
                                               })
                             : lift<Partition>("minima_set", "Partition → word",
                                               [](const Partition& pt) { return minima_set(pt); }));
        });
  }

  add("L_forall_to_D", {{"k", "1"}}, "f(f′(n))+1 < f′(n+1)", "Ψ+ = ran(f)", [](const Params& p, bool mutant) {
    const Nat k = need_k(p, 1, 1, "stated for k > 0");
    return make(count_id("L", Quant::Forall, k), "D", reindex_map(Schedule::shift(), "reindex(shift)"),
                mutant ? lift<UpStream>("range_set", "EPDiff → word", [](const UpStream& f) { return range_set(f); })
                       : lift<UpStream>("range of sparse_selector", "unit tail → word, otherwise range of a program",
                                        [](const UpStream& f) { return range_set(sparse_selector(f)); }));
  });

  add("L_forall_dual_to_dualD", {{"k", "1"}}, "f_X(n) = min{m>n : |[n,m)∩X| > 2k}", "Ψ+ drops the h term",
      [](const Params& p, bool mutant) {
        const Nat k = need_k(p, 1, 1, "double counting needs k >= 1");
        auto c = make("L_forall_k_perp{k=" + std::to_string(k) + "}", "D_perp",
                      lift<OmegaSet>("double_count_bound", "word → EPDiff, range → Program",
                                     [k](const OmegaSet& x) { return double_count_bound(x, k); }),
                      mutant ? lift<UpStream>("constant gaps k+1", "constant EPDiff",
                                              [k](const UpStream&) { return UpStream::ep(0, {}, {k + 1}); })
                             : lift<UpStream>("recursive_spreader", "any → Program",
                                              [k](const UpStream& h) { return recursive_spreader(h, k); }));
        return c;
      });

  add("L1_R1_iso_fwd", {}, "Ψ+(X) = X for co-infinite X", "Ψ+ thickens X by 1", [](const Params&, bool mutant) {
    return make("L_exists_k{k=1}", "R_exists_k{k=1}", identity_map(),
                lift<OmegaSet>(mutant ? "co-infinite part, thickened" : "co-infinite part", "preserves words",
                               [mutant](const OmegaSet& x) {
                                 const OmegaSet base = x.co_infinite() == Tri::True ? x : OmegaSet::evens();
                                 return mutant ? thicken(base, 1) : base;
                               }));
  });
  add("L1_R1_iso_bwd", {}, "Ψ−(f)(n) = f(2n)", "Ψ+ thickens X by 3", [](const Params&, bool mutant) {
    return make("R_exists_k{k=1}", "L_exists_k{k=1}", reindex_map(Schedule::pairs(), "reindex(pairs)"),
                mutant ? thicken_map(3) : identity_map());
  });

  for (Quant q : {Quant::Forall, Quant::Exists}) {
    const std::string qs = quant_name(q);
    add("M_" + qs + "_from_R", {{"k", "1"}}, "Ψ+(X) = ⋃_{j∈X}[j, j+1)", "blocks of width 2",
        [q, qs](const Params& p, bool mutant) {
          const Nat k = need_k(p, 1, 1, "measure thresholds are positive");
          const Nat width = mutant ? 2 : 1;
          return make("M_" + qs + "_eps{eps=" + std::to_string(k) + "}", count_id("R", q, k), identity_map(),
                      lift<OmegaSet>("unit_blocks(width " + std::to_string(width) + ")", "word → MeasurableSet",
                                     [width](const OmegaSet& x) { return unit_blocks(x, width); }));
        });
    add("M_" + qs + "_to_R", {{"k", "1"}}, "μ([y_{j−1},m) ∩ Y) ≥ 2", "greedy threshold 1",
        [q, qs](const Params& p, bool mutant) {
          const Nat k = need_k(p, 1, 1, "measure thresholds are positive");
          const Nat thr = mutant ? 1 : 2;
          return make(count_id("R", q, k), "M_" + qs + "_eps{eps=" + std::to_string(k) + "}", identity_map(),
                      lift<MeasurableSet>("greedy_mass_points(" + std::to_string(thr) + ")", "MeasurableSet → word",
                                          [thr](const MeasurableSet& y) { return greedy_mass_points(y, thr); }));
        });
    add("M_scaling_" + qs, {{"delta", "1"}, {"eps", "2/5"}}, "c(x) = x/B with ε·B > δ", "scale by B−1",
        [qs](const Params& p, bool mutant) {
          const Rational eps = param_rational(p, "eps", Rational(2, 5));
          const Rational delta = param_rational(p, "delta", Rational(1));
          if (eps <= 0 || delta <= 0) throw BadParams("eps and delta must be positive");
          Nat b = scaling_factor(eps, delta);
          if (mutant) b = std::max<Nat>(1, b - 1);
          const std::string bs = std::to_string(b);
          return make("M_" + qs + "_eps{eps=" + format_rational(eps) + "}",
                      "M_" + qs + "_eps{eps=" + format_rational(delta) + "}",
                      lift<UpStream>("scale_values(" + bs + ")", "preserves EPDiff",
                                     [b](const UpStream& f) { return scale_values(f, b); }),
                      lift<MeasurableSet>("contract_set(" + bs + ")", "preserves MeasurableSet",
                                          [b](const MeasurableSet& y) { return contract_set(y, b); }));
        });
  }

  add("id_forall_to_Rk", {{"k", "1"}}, "both maps are identities (ω^{>id} ⊆ ω^{↑ω})", "Ψ+ = ω",
      [](const Params& p, bool mutant) {
        const Nat k = param_nat(p, "k", 1);
        return make("R_id_forall", count_id("R", Quant::Forall, k), identity_map(),
                    mutant ? full_set_map() : identity_map());
      });
  add("D_to_id_forall", {}, "x̄ := ⟨x_{n²}⟩ ≤* h", "majorant sampled at x_n", [](const Params&, bool mutant) {
    const Schedule s = mutant ? Schedule::arith(1) : Schedule::square();
    auto c = make("D", "R_id_forall", identity_map(),
                  lift<OmegaSet>(mutant ? "id_majorant(arith(1))" : "id_majorant(squares)", "word → Program with form",
                                 [s](const OmegaSet& x) { return id_majorant(x, s); }));
    c.source_restriction = DomainSpec{DomainSpec::Kind::StreamsGtId};
    return c;
  });
  add("id_exists_iso_fwd", {}, "R^id_∃ ⪯ R^0_∃ by identities", "Ψ+ = ω", [](const Params&, bool mutant) {
    return make("R_id_exists", "R_exists_k{k=0}", identity_map(), mutant ? full_set_map() : identity_map());
  });
  add("exists0_to_id_exists", {}, "h(n+1) = f(h(n)+n+1)", "lag 0 in the recurrence", [](const Params&, bool mutant) {
    const Nat lag = mutant ? 0 : 1;
    return make("R_exists_k{k=0}", "R_id_exists",
                lift<UpStream>("nested_accelerator(lag " + std::to_string(lag) + ")", "unit tail → form, otherwise Program",
                               [lag](const UpStream& f) { return nested_accelerator(f, lag); }),
                identity_map());
  });
  add("bd_exists_from_Rk", {{"k", "0"}}, "Ψ−(f)(n) = f(n²)", "Ψ− = identity", [](const Params& p, bool mutant) {
    const Nat k = param_nat(p, "k", 0);
    return make(count_id("R", Quant::Exists, k), "R_bd_exists",
                mutant ? identity_map() : reindex_map(Schedule::square(), "reindex(squares)"), identity_map());
  });
  add("D_to_bd_forall", {}, "f(n+1) = g(f(n)) + n + 1", "Ψ− = identity and Ψ+ samples x_n",
      [](const Params&, bool mutant) {
        if (mutant)
          return make("D", "R_bd_forall", identity_map(), enumeration_map(Schedule::arith(1), "sample_enumeration(x_n)"));
        return make("D", "R_bd_forall",
                    lift<UpStream>("bd_forall_spreader", "any → Program",
                                   [](const UpStream& g) { return bd_forall_spreader(g); }),
                    enumeration_map(Schedule::square(), "sample_enumeration(squares)"));
      });

  // monotonicity facts: identity maps between neighbouring systems
  auto k_le_l = [](const std::string& family, Nat min_k) {
    return [family, min_k](const Params& p, bool mutant) {
      const Nat k = param_nat(p, "k", min_k);
      const Nat l = param_nat(p, "l", k + 1);
      const Quant q = param_quant(p, "iota", Quant::Forall);
      if (k < min_k) throw BadParams("k must be at least " + std::to_string(min_k));
      if (k >= l) throw BadParams("need k < l");
      const Nat src = mutant ? k : l, dst = mutant ? l : k;
      return make(count_id(family, q, src), count_id(family, q, dst), identity_map(), identity_map());
    };
  };
  auto exists_le_forall = [](const std::string& family, Nat min_k) {
    return [family, min_k](const Params& p, bool mutant) {
      const Nat k = param_nat(p, "k", min_k);
      if (k < min_k) throw BadParams("k must be at least " + std::to_string(min_k));
      const Quant src = mutant ? Quant::Forall : Quant::Exists;
      const Quant dst = mutant ? Quant::Exists : Quant::Forall;
      return make(count_id(family, src, k), count_id(family, dst, k), identity_map(), identity_map());
    };
  };
  add("fact_k_le_l", {{"iota", "forall"}, {"k", "1"}, {"l", "2"}}, "If k<ℓ then R^ℓ_ι ⪯ R^k_ι",
      "source and target swapped", k_le_l("R", 0));
  add("fact_exists_le_forall", {{"k", "1"}}, "R^k_∃ ⪯ R^k_∀", "source and target swapped", exists_le_forall("R", 0));
  add("fact_col_k_le_l", {{"iota", "forall"}, {"k", "2"}, {"l", "3"}}, "If k<ℓ then R^{col,ℓ}_ι ⪯ R^{col,k}_ι",
      "source and target swapped", k_le_l("Rcol", 1));
  add("fact_col_exists_le_forall", {{"k", "2"}}, "R^{col,k}_∃ ⪯ R^{col,k}_∀", "source and target swapped",
      exists_le_forall("Rcol", 1));
  add("fact_L_k_le_l", {{"iota", "forall"}, {"k", "1"}, {"l", "2"}}, "If k<ℓ then L^ℓ_ι ⪯ L^k_ι",
      "source and target swapped", k_le_l("L", 0));
  add("fact_L_exists_le_forall", {{"k", "1"}}, "L^k_∃ ⪯ L^k_∀", "source and target swapped",
      exists_le_forall("L", 0));
  add("R_to_L", {{"iota", "forall"}, {"k", "1"}}, "R^k_ι ⪯ L^k_ι", "Ψ+ thickens X by 1",
      [](const Params& p, bool mutant) {
        const Nat k = param_nat(p, "k", 1);
        const Quant q = param_quant(p, "iota", Quant::Forall);
        return make(count_id("R", q, k), count_id("L", q, k),
                    reindex_map(Schedule::arith(k + 1), "reindex(arith(" + std::to_string(k + 1) + "))"),
                    mutant ? thicken_map(1) : identity_map());
      });
  add("bd_below_Rk", {{"iota", "forall"}, {"k", "1"}}, "R^bd_ι ⪯ R^k_ι", "Ψ+ = ω", [](const Params& p, bool mutant) {
    const Nat k = param_nat(p, "k", 1);
    const Quant q = param_quant(p, "iota", Quant::Forall);
    return make("R_bd_" + quant_name(q), count_id("R", q, k), identity_map(), mutant ? full_set_map() : identity_map());
  });
  return v;
}

const std::vector<Builder>& builders() {
  static const std::vector<Builder> b = make_builders();
  return b;
}

const Builder& builder(const std::string& id) {
  for (const auto& b : builders())
    if (b.info.id == id) return b;
  throw UnknownId(id);
}

TukeyConnection build(const std::string& id, const Params& params, bool mutant) {
  const auto& b = builder(id);
  check_param_keys(params, b.keys);
  Params full = b.info.defaults;
  for (const auto& [k, v] : params) full[k] = v;
  auto c = b.build(full, mutant);
  c.id = id;
  c.params = full;
  c.anchor = b.info.anchor;
  c.mutant = mutant;
  return c;
}

}  // namespace

Nat scaling_factor(const Rational& eps, const Rational& delta) {
  if (eps <= 0) throw BadParams("eps must be positive");
  return static_cast<Nat>(floor(delta / eps)) + 1;
}

const std::vector<ConnectionInfo>& connection_registry() {
  static const std::vector<ConnectionInfo> infos = [] {
    std::vector<ConnectionInfo> v;
    for (const auto& b : builders()) v.push_back(b.info);
    return v;
  }();
  return infos;
}

const ConnectionInfo& connection_info(const std::string& id) { return builder(id).info; }

TukeyConnection build_connection(const std::string& id, const Params& params) { return build(id, params, false); }

TukeyConnection build_mutant(const std::string& id, const Params& params) { return build(id, params, true); }

TukeyConnection compose_connections(const TukeyConnection& c1, const TukeyConnection& c2) {
  if (c1.target.id() != c2.source.id())
    throw TypeMismatch("cannot compose: " + c1.target.id() + " is not " + c2.source.id());
  TukeyConnection c = c1;
  c.id = "compose(" + c1.full_id() + "," + c2.full_id() + ")";
  c.params = {};
  c.target = c2.target;
  c.minus = {c2.minus.name + " ∘ " + c1.minus.name,
             [m1 = c1.minus.apply, m2 = c2.minus.apply](const Object& o) { return m2(m1(o)); },
             c2.minus.closure + " after " + c1.minus.closure};
  c.plus = {c1.plus.name + " ∘ " + c2.plus.name,
            [p1 = c1.plus.apply, p2 = c2.plus.apply](const Object& o) { return p1(p2(o)); },
            c1.plus.closure + " after " + c2.plus.closure};
  c.anchor = c1.anchor + " then " + c2.anchor;
  c.closure_note = "Ψ−: " + c.minus.closure + "; Ψ+: " + c.plus.closure;
  c.mutant = c1.mutant || c2.mutant;
  return c;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "Pass";
    case Status::PassWithEvidence: return "PassWithEvidence";
    case Status::Vacuous: return "Vacuous";
    case Status::Fail: return "Fail";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

CheckOutcome check_connection(const TukeyConnection& c, const Object& x, const Object& y, const CheckPolicy& policy,
                              bool premise_certified) {
  if (sort_of(x) != c.x_domain().sort() || sort_of(y) != c.y_domain().sort())
    throw TypeMismatch(c.full_id() + " expects (" + c.x_domain().describe() + ", " + c.y_domain().describe() + ")");
  const EvalPolicy eval{policy.horizon};
  CheckOutcome out;
  try {
    out.premise = c.target.evaluate(c.minus.apply(x), y, eval);
    if (premise_certified && out.premise.is_unknown()) {
      out.note = "premise certified by construction";
      out.premise = Verdict::yes();
    }
    if (!out.premise.is_true()) {
      out.status = Status::Vacuous;
      out.premise_unknown = out.premise.is_unknown();
      return out;
    }
    out.conclusion = c.source.evaluate(x, c.plus.apply(y), eval);
  } catch (const ProgramDivergence& e) {
    out.status = Status::Inconclusive;
    out.note = e.what();
    return out;
  } catch (const FragmentUnsupported& e) {
    out.status = Status::Inconclusive;
    out.note = e.what();
    return out;
  }
  if (out.conclusion.is_true()) {
    out.status = Status::Pass;
  } else if (out.conclusion.is_false()) {
    out.status = Status::Fail;
  } else if (c.source.exists_goal() && out.conclusion.evidence >= policy.evidence) {
    out.status = Status::PassWithEvidence;
  } else {
    out.status = Status::Inconclusive;
  }
  return out;
}

}  // namespace itl
