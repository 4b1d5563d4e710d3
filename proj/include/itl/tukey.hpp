#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "itl/json_io.hpp"
#include "itl/measurable.hpp"
#include "itl/omega_set.hpp"
#include "itl/partition.hpp"
#include "itl/relations.hpp"
#include "itl/stream.hpp"

namespace itl {

/// Any object a relational system ranges over.
using Object = std::variant<UpStream, OmegaSet, Partition, MeasurableSet>;

enum class Sort { Stream, Set, Partition, Measurable };
const char* to_string(Sort s);
Sort sort_of(const Object& o);
Json object_to_json(const Object& o);
Object object_from_json(Sort s, const Json& j);

/// The side of a relational system: a sort plus a membership restriction.
struct DomainSpec {
  enum class Kind { Streams, StreamsGtK, StreamsGtId, StreamsDivergent, Sets, CoinfiniteSets, Partitions, Measurables };
  Kind kind;
  Nat k = 0;  // for StreamsGtK

  Sort sort() const;
  std::string describe() const;
  /// membership as far as the representation can tell
  Tri contains(const Object& o) const;
  bool operator==(const DomainSpec&) const = default;
};

/// Parameters in the form name{key=value,...}; values stay textual.
using Params = std::map<std::string, std::string>;
std::string format_id(const std::string& name, const Params& params);
std::pair<std::string, Params> parse_id(const std::string& id);
/// Typed parameter access; BadParams on malformed values.
Nat param_nat(const Params& p, const std::string& key, Nat fallback);
Rational param_rational(const Params& p, const std::string& key, const Rational& fallback);
Quant param_quant(const Params& p, const std::string& key, Quant fallback);
/// BadParams when p names a key outside `allowed`.
void check_param_keys(const Params& p, const std::vector<std::string>& allowed);

/// A triple <domain, codomain, relation>; dualized systems swap sides and negate.
class RelationalSystem {
 public:
  using Relation = std::function<Verdict(const Object& x, const Object& y, const EvalPolicy&)>;

  RelationalSystem(std::string name, Params params, std::string relation_id, DomainSpec domain, DomainSpec codomain,
                   Quant goal, std::string metadata, Relation relation);

  std::string id() const;
  const std::string& relation_id() const { return relation_id_; }
  const DomainSpec& domain() const { return dualized_ ? codomain_ : domain_; }
  const DomainSpec& codomain() const { return dualized_ ? domain_ : codomain_; }
  bool dualized() const { return dualized_; }
  std::string metadata() const;
  /// whether a True verdict asks for infinitely many witnesses
  bool exists_goal() const { return (goal_ == Quant::Exists) != dualized_; }

  Verdict evaluate(const Object& a, const Object& b, const EvalPolicy& policy = {}) const;
  RelationalSystem dual() const;

 private:
  std::string name_;
  Params params_;
  std::string relation_id_;
  DomainSpec domain_;
  DomainSpec codomain_;
  Quant goal_;
  std::string metadata_;
  Relation relation_;
  bool dualized_ = false;
};

/// Registry lookup; accepts names with a _perp suffix and shorthands such as R_forall_0.
RelationalSystem get_system(const std::string& id);
RelationalSystem dualize_system(const RelationalSystem& s);
/// Canonical ids of every registered system at default parameters.
std::vector<std::string> list_systems();

/// A named map between objects with the representation kinds it preserves.
struct TukeyMap {
  std::string name;
  std::function<Object(const Object&)> apply;
  std::string closure;
};

/// Maps (Ψ−, Ψ+) with Ψ−(x) ⊏' y' ⇒ x ⊏ Ψ+(y') from source into target.
struct TukeyConnection {
  std::string id;
  Params params;
  RelationalSystem source;
  RelationalSystem target;
  TukeyMap minus;
  TukeyMap plus;
  std::string anchor;
  std::string closure_note;
  std::optional<DomainSpec> source_restriction;  // inputs narrower than the source domain
  bool mutant = false;

  std::string full_id() const { return format_id(id, params); }
  DomainSpec x_domain() const { return source_restriction.value_or(source.domain()); }
  DomainSpec y_domain() const { return target.codomain(); }
};

struct ConnectionInfo {
  std::string id;
  Params defaults;
  std::string anchor;
  std::string mutant;  // description of the standard mutant
};

/// Every registered connection with default parameters.
const std::vector<ConnectionInfo>& connection_registry();
const ConnectionInfo& connection_info(const std::string& id);
/// Throws UnknownId or BadParams.
TukeyConnection build_connection(const std::string& id, const Params& params = {});
/// The same connection with a deliberately corrupted map.
TukeyConnection build_mutant(const std::string& id, const Params& params = {});
/// c1: A→B and c2: B→C give A→C.
TukeyConnection compose_connections(const TukeyConnection& c1, const TukeyConnection& c2);

/// Least integer B with eps·B > delta.
Nat scaling_factor(const Rational& eps, const Rational& delta);

struct CheckPolicy {
  Nat horizon = 4096;
  Nat evidence = 25;
};

enum class Status { Pass, PassWithEvidence, Vacuous, Fail, Inconclusive };
const char* to_string(Status s);

struct CheckOutcome {
  Verdict premise;
  Verdict conclusion;
  Status status = Status::Inconclusive;
  bool premise_unknown = false;  // vacuous only because the premise was undecided
  std::string note;
};

/// Evaluates premise target(Ψ−(x), y') and conclusion source(x, Ψ+(y')).
/// A certified premise counts as True even when the evaluator cannot decide it.
CheckOutcome check_connection(const TukeyConnection& c, const Object& x, const Object& y,
                              const CheckPolicy& policy = {}, bool premise_certified = false);

}  // namespace itl
