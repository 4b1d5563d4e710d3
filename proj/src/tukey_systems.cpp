#include <algorithm>
#include <cctype>

#include "itl/error.hpp"
#include "itl/tukey.hpp"

namespace itl {

namespace {

template <class T>
const T& expect(const Object& o, const char* what) {
  if (auto p = std::get_if<T>(&o)) return *p;
  throw TypeMismatch(std::string("expected ") + what + ", got " + to_string(sort_of(o)));
}

const UpStream& stream_arg(const Object& o) { return expect<UpStream>(o, "UpStream"); }

using Kind = DomainSpec::Kind;

struct Family {
  std::string name;
  std::vector<std::string> keys;
  Params defaults;
  std::function<RelationalSystem(const Params&)> make;
};

RelationalSystem count_system(const std::string& name, const Params& p, Quant q, bool lower) {
  const Nat k = param_nat(p, "k", 1);
  const bool fa = q == Quant::Forall;
  std::string meta;
  if (lower) {
    meta = fa ? (k == 0 ? "𝔟(L^0_∀)=1; 𝔡(L^0_∀) is not well-defined or ∞"
                        : "𝔟(L^k_∀)=𝔟 and 𝔡(L^k_∀)=𝔡 for k>0")
              : "𝔡(L^k_∃)=𝔟 and 𝔟(L^k_∃)=𝔡";
  } else {
    meta = fa ? (k == 0 ? "𝔟(R^0_∀)=1; 𝔡 not well-defined or ∞" : "𝔟(R^k_∀)=𝔟 and 𝔡(R^k_∀)=𝔡 for k≥1")
              : "𝔡(R^k_∃)=𝔟 and 𝔟(R^k_∃)=𝔡";
  }
  DomainSpec dom = lower ? DomainSpec{Kind::StreamsGtK, k} : DomainSpec{Kind::Streams};
  DomainSpec cod = lower ? DomainSpec{Kind::CoinfiniteSets} : DomainSpec{Kind::Sets};
  return RelationalSystem(name, {{"k", std::to_string(k)}}, fa ? "forall_k" : "exists_k", dom, cod, q, meta,
                          [k, q](const Object& x, const Object& y, const EvalPolicy& pol) {
                            return eval_count_relation(stream_arg(x), expect<OmegaSet>(y, "OmegaSet"),
                                                       ThresholdSpec::constant(k), q, pol);
                          });
}

RelationalSystem colored_system(const std::string& name, const Params& p, Quant q) {
  const Nat k = param_nat(p, "k", 2);
  if (k == 0) throw BadParams("colored systems need k >= 1");
  const bool fa = q == Quant::Forall;
  std::string meta = fa ? (k == 1 ? "𝔟(R^{col,1}_∀)=2" : "𝔟(R^{col,k}_∀)=𝔟 and 𝔡(R^{col,k}_∀)=𝔡 for k≥2")
                        : "𝔡(R^{col,k}_∃)=𝔟 and 𝔟(R^{col,k}_∃)=𝔡 for k≥2";
  return RelationalSystem(name, {{"k", std::to_string(k)}}, fa ? "col_forall_k" : "col_exists_k",
                          {Kind::Streams}, {Kind::Partitions}, q, meta,
                          [k, q](const Object& x, const Object& y, const EvalPolicy& pol) {
                            return eval_colored_relation(stream_arg(x), expect<Partition>(y, "Partition"), k, q, pol);
                          });
}

RelationalSystem measure_system(const std::string& name, const Params& p, Quant q) {
  const Rational eps = param_rational(p, "eps", Rational(1));
  if (eps <= 0) throw BadParams("eps must be positive");
  const bool fa = q == Quant::Forall;
  std::string meta = fa ? "𝔟(M^ε_∀)=𝔟 and 𝔡(M^ε_∀)=𝔡" : "𝔟(M^ε_∃)=𝔟 and 𝔡(M^ε_∃)=𝔡";
  return RelationalSystem(name, {{"eps", format_rational(eps)}}, fa ? "measure_forall" : "measure_exists",
                          {Kind::Streams}, {Kind::Measurables}, q, meta,
                          [eps, q](const Object& x, const Object& y, const EvalPolicy& pol) {
                            return eval_measure_relation(stream_arg(x), expect<MeasurableSet>(y, "MeasurableSet"),
                                                         MeasureThreshold::constant(eps), q, pol);
                          });
}

RelationalSystem measure_vec_system(const std::string& name, Quant q) {
  // eps_n = (1/2)^n
  const EpsSequence eps{{}, Rational(1), Rational(1, 2)};
  return RelationalSystem(name, {}, "measure_vec", {Kind::Streams}, {Kind::Measurables}, q,
                          "vector threshold ε_n=2^-n; decided through vanishing interval measures",
                          [eps, q](const Object& x, const Object& y, const EvalPolicy& pol) {
                            return eval_measure_relation(stream_arg(x), expect<MeasurableSet>(y, "MeasurableSet"),
                                                         MeasureThreshold::vec(eps), q, pol);
                          });
}

RelationalSystem threshold_system(const std::string& name, Quant q, bool id) {
  const bool fa = q == Quant::Forall;
  std::string meta;
  if (id)
    meta = fa ? "𝔡(R^id)=𝔡 and 𝔟(R^id)=𝔟 (stated without the ∀/∃ subscript)" : "𝔡(R^id_∃)=𝔟 and 𝔟(R^id_∃)=𝔡";
  else
    meta = fa ? "𝔡(R^bd_∀)=𝔡 and 𝔟(R^bd_∀)=𝔟" : "𝔡(R^bd_∃)=𝔟 and 𝔟(R^bd_∃)=𝔡";
  const std::string rel = std::string(id ? "id_" : "bd_") + (fa ? "forall" : "exists");
  const ThresholdSpec t = id ? ThresholdSpec::identity() : ThresholdSpec::bounded();
  return RelationalSystem(name, {}, rel, {id ? Kind::StreamsGtId : Kind::StreamsDivergent}, {Kind::Sets}, q, meta,
                          [t, q](const Object& x, const Object& y, const EvalPolicy& pol) {
                            return eval_count_relation(stream_arg(x), expect<OmegaSet>(y, "OmegaSet"), t, q, pol);
                          });
}

const std::vector<Family>& families() {
  static const std::vector<Family> fs = [] {
    std::vector<Family> v;
    v.push_back({"D", {}, {}, [](const Params&) {
                   return RelationalSystem("D", {}, "leq_star", {Kind::Streams}, {Kind::Streams}, Quant::Forall,
                                           "𝔟(D)=𝔟 and 𝔡(D)=𝔡",
                                           [](const Object& x, const Object& y, const EvalPolicy& pol) {
                                             return eval_leq_star(stream_arg(x), stream_arg(y), pol);
                                           });
                 }});
    v.push_back({"I", {}, {}, [](const Params&) {
                   return RelationalSystem("I", {}, "blass_incl", {Kind::Streams}, {Kind::Streams}, Quant::Forall,
                                           "𝔟(𝕀)=𝔟 and 𝔡(𝕀)=𝔡",
                                           [](const Object& x, const Object& y, const EvalPolicy& pol) {
                                             return eval_blass_inclusion(stream_arg(x), stream_arg(y), pol);
                                           });
                 }});
    for (Quant q : {Quant::Forall, Quant::Exists}) {
      const std::string qs = q == Quant::Forall ? "forall" : "exists";
      v.push_back({"R_" + qs + "_k", {"k"}, {{"k", "1"}},
                   [q, n = "R_" + qs + "_k"](const Params& p) { return count_system(n, p, q, false); }});
      v.push_back({"Rcol_" + qs + "_k", {"k"}, {{"k", "2"}},
                   [q, n = "Rcol_" + qs + "_k"](const Params& p) { return colored_system(n, p, q); }});
      v.push_back({"L_" + qs + "_k", {"k"}, {{"k", "1"}},
                   [q, n = "L_" + qs + "_k"](const Params& p) { return count_system(n, p, q, true); }});
      v.push_back({"M_" + qs + "_eps", {"eps"}, {{"eps", "1"}},
                   [q, n = "M_" + qs + "_eps"](const Params& p) { return measure_system(n, p, q); }});
      v.push_back({"M_vec_" + qs, {}, {}, [q, n = "M_vec_" + qs](const Params&) { return measure_vec_system(n, q); }});
      v.push_back({"R_id_" + qs, {}, {}, [q, n = "R_id_" + qs](const Params&) { return threshold_system(n, q, true); }});
      v.push_back({"R_bd_" + qs, {}, {}, [q, n = "R_bd_" + qs](const Params&) { return threshold_system(n, q, false); }});
    }
    v.push_back({"M_sum", {}, {}, [](const Params&) {
                   return RelationalSystem("M_sum", {}, "measure_sum", {Kind::Streams}, {Kind::Measurables},
                                           Quant::Forall, "summed threshold; False on every infinite-measure set",
                                           [](const Object& x, const Object& y, const EvalPolicy& pol) {
                                             return eval_measure_relation(stream_arg(x),
                                                                          expect<MeasurableSet>(y, "MeasurableSet"),
                                                                          MeasureThreshold::sum(), Quant::Forall, pol);
                                           });
                 }});
    return v;
  }();
  return fs;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

const char* to_string(Sort s) {
  switch (s) {
    case Sort::Stream: return "UpStream";
    case Sort::Set: return "OmegaSet";
    case Sort::Partition: return "Partition";
    case Sort::Measurable: return "MeasurableSet";
  }
  return "?";
}

Sort sort_of(const Object& o) { return static_cast<Sort>(o.index()); }

Json object_to_json(const Object& o) {
  return std::visit([](const auto& v) { return to_json(v); }, o);
}

Object object_from_json(Sort s, const Json& j) {
  switch (s) {
    case Sort::Stream: return stream_from_json(j);
    case Sort::Set: return set_from_json(j);
    case Sort::Partition: return partition_from_json(j);
    case Sort::Measurable: return measurable_from_json(j);
  }
  throw MalformedSpec("unknown sort");
}

Sort DomainSpec::sort() const {
  switch (kind) {
    case Kind::Streams:
    case Kind::StreamsGtK:
    case Kind::StreamsGtId:
    case Kind::StreamsDivergent: return Sort::Stream;
    case Kind::Sets:
    case Kind::CoinfiniteSets: return Sort::Set;
    case Kind::Partitions: return Sort::Partition;
    case Kind::Measurables: return Sort::Measurable;
  }
  return Sort::Stream;
}

std::string DomainSpec::describe() const {
  switch (kind) {
    case Kind::Streams: return "UpStream";
    case Kind::StreamsGtK: return "UpStream with in_gt_k(" + std::to_string(k) + ")";
    case Kind::StreamsGtId: return "UpStream with gt_id";
    case Kind::StreamsDivergent: return "UpStream with divergent differences";
    case Kind::Sets: return "OmegaSet";
    case Kind::CoinfiniteSets: return "OmegaSet co-infinite";
    case Kind::Partitions: return "Partition";
    case Kind::Measurables: return "MeasurableSet";
  }
  return "?";
}

Tri DomainSpec::contains(const Object& o) const {
  if (sort_of(o) != sort()) return Tri::False;
  switch (kind) {
    case Kind::StreamsGtK: return std::get<UpStream>(o).classify().in_gt_k(k);
    case Kind::StreamsGtId: return std::get<UpStream>(o).classify().gt_id;
    case Kind::StreamsDivergent: return std::get<UpStream>(o).classify().divergent;
    case Kind::CoinfiniteSets: return std::get<OmegaSet>(o).co_infinite();
    default: return Tri::True;
  }
}

std::string format_id(const std::string& name, const Params& params) {
  if (params.empty()) return name;
  std::string out = name + "{";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) out += ",";
    out += k + "=" + v;
    first = false;
  }
  return out + "}";
}

std::pair<std::string, Params> parse_id(const std::string& id) {
  const auto brace = id.find('{');
  if (brace == std::string::npos) return {id, {}};
  if (id.back() != '}') throw BadParams("unterminated parameter list in " + id);
  Params p;
  const std::string body = id.substr(brace + 1, id.size() - brace - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    const auto comma = std::min(body.find(',', pos), body.size());
    const std::string item = body.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw BadParams("expected key=value in " + id);
    p[item.substr(0, eq)] = item.substr(eq + 1);
    pos = comma + 1;
  }
  return {id.substr(0, brace), p};
}

Nat param_nat(const Params& p, const std::string& key, Nat fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  if (!all_digits(it->second) || it->second.size() > 9) throw BadParams(key + " must be a small natural number");
  return std::stoull(it->second);
}

Rational param_rational(const Params& p, const std::string& key, const Rational& fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    return parse_rational(it->second);
  } catch (const std::exception&) {
    throw BadParams(key + " must be a rational p/q");
  }
}

Quant param_quant(const Params& p, const std::string& key, Quant fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  if (it->second == "forall") return Quant::Forall;
  if (it->second == "exists") return Quant::Exists;
  throw BadParams(key + " must be forall or exists");
}

void check_param_keys(const Params& p, const std::vector<std::string>& allowed) {
  for (const auto& [k, v] : p)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) throw BadParams("unexpected parameter " + k);
}

RelationalSystem::RelationalSystem(std::string name, Params params, std::string relation_id, DomainSpec domain,
                                   DomainSpec codomain, Quant goal, std::string metadata, Relation relation)
    : name_(std::move(name)),
      params_(std::move(params)),
      relation_id_(std::move(relation_id)),
      domain_(domain),
      codomain_(codomain),
      goal_(goal),
      metadata_(std::move(metadata)),
      relation_(std::move(relation)) {
  if (!is_relation_id(relation_id_)) throw UnknownId(relation_id_);
}

std::string RelationalSystem::id() const { return format_id(dualized_ ? name_ + "_perp" : name_, params_); }

Verdict RelationalSystem::evaluate(const Object& a, const Object& b, const EvalPolicy& policy) const {
  if (sort_of(a) != domain().sort() || sort_of(b) != codomain().sort())
    throw TypeMismatch(id() + " expects (" + domain().describe() + ", " + codomain().describe() + ")");
  return dualized_ ? relation_(b, a, policy).negated() : relation_(a, b, policy);
}

std::string RelationalSystem::metadata() const {
  return dualized_ ? metadata_ + "; dual swaps them: 𝔟(R⊥)=𝔡(R), 𝔡(R⊥)=𝔟(R)" : metadata_;
}

RelationalSystem RelationalSystem::dual() const {
  RelationalSystem d = *this;
  d.dualized_ = !dualized_;
  return d;
}

RelationalSystem dualize_system(const RelationalSystem& s) { return s.dual(); }

RelationalSystem get_system(const std::string& id) {
  auto [name, params] = parse_id(id);
  bool perp = false;
  if (name.size() > 5 && name.ends_with("_perp")) {
    perp = true;
    name.resize(name.size() - 5);
  }
  // shorthand R_forall_0 for R_forall_k{k=0}
  if (const auto us = name.rfind('_'); us != std::string::npos && all_digits(name.substr(us + 1))) {
    if (params.count("k")) throw BadParams("k given twice in " + id);
    params["k"] = name.substr(us + 1);
    name = name.substr(0, us) + "_k";
  }
  for (const auto& fam : families()) {
    if (fam.name != name) continue;
    check_param_keys(params, fam.keys);
    auto s = fam.make(params);
    return perp ? s.dual() : s;
  }
  throw UnknownId(id);
}

std::vector<std::string> list_systems() {
  std::vector<std::string> out;
  for (const auto& fam : families()) {
    const auto s = fam.make(fam.defaults);
    out.push_back(s.id());
    out.push_back(s.dual().id());
  }
  return out;
}

}  // namespace itl
