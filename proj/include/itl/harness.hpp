#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itl/json_io.hpp"
#include "itl/tukey.hpp"

namespace itl {

struct GenParams {
  Nat max_prefix = 3;
  Nat max_cycle = 4;
  Nat max_diff = 4;
  std::uint64_t seed = 0;
};

/// Deterministic object from the given domain; throws BadParams on empty bounds.
Object generate(const DomainSpec& domain, const GenParams& params);
/// EPDiff stream with every difference in [min_diff, min_diff + max_diff - 1].
UpStream generate_ep(const GenParams& params, Nat min_diff = 1);
/// Word with at least one 1 in its cycle; `coinfinite` also forces a 0.
OmegaSet generate_word(const GenParams& params, bool coinfinite = false);

/// Direct per-interval values for n < horizon.
struct OracleReport {
  std::vector<Rational> values;  // counts, block counts or measures
  Nat hits = 0;                  // violations for ∀∞ relations, witnesses for ∃∞ relations
  Verdict verdict;               // Unknown at the horizon, carrying hits
};

/// Brute-force shadow of a relation; `rhs` must match the relation's right-hand sort.
OracleReport horizon_oracle(const UpStream& f, const Object& rhs, const std::string& relation_id,
                            const Params& params, Nat horizon);

struct Certificate {
  std::string connection;
  std::string reason;
  Verdict premise;  // True by construction
};

struct Instance {
  Object x;
  Object y;
  std::optional<Certificate> certificate;
};

/// Random (x, y') from the connection's input domains.
Instance random_instance(const TukeyConnection& c, std::uint64_t seed);
/// (x, y') whose premise holds by construction; no certificate when the premise is unsatisfiable.
Instance certified_instance(const TukeyConnection& c, std::uint64_t seed);

struct SuiteOptions {
  Nat trials = 1000;
  std::uint64_t seed = 1;
  CheckPolicy policy;
  bool mutant = false;
  Params params;
  Nat threads = 0;  // 0: ITL_THREADS or the hardware count
};

struct SuiteReport {
  std::string lemma;
  Params params;
  bool mutant = false;
  std::uint64_t seed = 0;
  Nat trials = 0;
  std::array<Nat, 5> counts{};  // indexed by Status
  Nat vacuous_unknown = 0;
  Nat certified = 0;
  std::vector<Json> witnesses;  // failing instances, serialized
  double wall_ms = 0;

  Nat count(Status s) const { return counts[static_cast<std::size_t>(s)]; }
  double vacuous_ratio() const { return trials ? static_cast<double>(count(Status::Vacuous)) / trials : 0; }
  Json to_json(bool with_time = true) const;
  static std::string csv_header();
  std::string csv_row() const;
};

/// Runs `trials` checks: odd trials certified, even trials random, trial seed mix_seed(seed, i).
SuiteReport run_suite(const std::string& connection_id, const SuiteOptions& options);

struct SearchResult {
  std::string predicate;
  bool found = false;
  Nat tried = 0;
  Json witness;
};

/// Predicates: "both_col1", "forall0_holds", "fail_fact_monotone".
SearchResult search_counterexample(const std::string& predicate, Nat budget, std::uint64_t seed);
const std::vector<std::string>& search_predicates();

}  // namespace itl
