#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "itl/rational.hpp"

namespace itl {

enum class Tri { False, True, Unknown };

inline Tri tri(bool b) { return b ? Tri::True : Tri::False; }
const char* to_string(Tri t);

enum class StreamKind { EPDiff, Ramp, Program };
const char* to_string(StreamKind k);

/// start + prefix differences, then the cycle of differences repeated forever.
struct EPDiffSpec {
  Nat start = 0;
  std::vector<Nat> prefix;
  std::vector<Nat> cycle;
  bool operator==(const EPDiffSpec&) const = default;
};

/// Difference at index n is alpha*n + beta.
struct RampSpec {
  Nat start = 0;
  Nat alpha = 1;
  Nat beta = 1;
  bool operator==(const RampSpec&) const = default;
};

/// Eventual closed form: value(n) = a*n^2 + b*n + c[n mod |c|] for every n >= from.
struct QuasiForm {
  Rational a;
  Rational b;
  std::vector<Rational> c;
  Nat from = 0;

  Rational at(Nat n) const;
  std::size_t period() const { return c.size(); }
  bool operator==(const QuasiForm&) const = default;
};

/// Facts a construction proves about the stream it builds.
struct StreamFacts {
  Nat diff_lower = 1;               // every difference is at least this
  Tri gt_id = Tri::Unknown;         // f(n+1)-f(n) > n for all n
  Tri divergent = Tri::Unknown;     // differences tend to infinity
  Tri superlinear = Tri::Unknown;   // differences / n tend to infinity
};

/// A deterministic recurrence: value(0) = initial, value(n) = step(n, value(n-1)).
struct ProgramSpec {
  std::string descriptor;  // canonical JSON of the construction
  Nat initial = 0;
  std::function<Nat(Nat n, Nat prev)> step;
  StreamFacts facts;
  std::optional<QuasiForm> form;
  Nat budget = 1'000'000;
};

struct StreamClass {
  Nat min_diff = 1;
  bool min_exact = false;
  Tri gt_id = Tri::Unknown;
  Tri divergent = Tri::Unknown;
  Tri superlinear = Tri::Unknown;

  /// membership in the functions whose intervals all have more than k points
  Tri in_gt_k(Nat k) const;
};

/// A finitely represented strictly increasing function from naturals to naturals.
class UpStream {
 public:
  static UpStream ep(Nat start, std::vector<Nat> prefix, std::vector<Nat> cycle);
  static UpStream ramp(Nat start, Nat alpha, Nat beta);
  static UpStream program(ProgramSpec spec);
  static UpStream identity() { return ep(0, {}, {1}); }

  StreamKind kind() const;
  Nat operator()(Nat n) const;
  Nat start() const { return (*this)(0); }
  Nat diff(Nat n) const { return (*this)(n + 1) - (*this)(n); }

  /// least i with value(i) >= v
  Nat lower_index(Nat v) const;

  const EPDiffSpec* as_ep() const { return std::get_if<EPDiffSpec>(&rep_); }
  const RampSpec* as_ramp() const { return std::get_if<RampSpec>(&rep_); }
  const ProgramSpec* as_program() const;

  StreamClass classify() const;
  std::optional<QuasiForm> form() const;

  /// true when both streams share a representation (programs compare by descriptor)
  bool same_representation(const UpStream& other) const;

 private:
  struct ProgramState;
  std::variant<EPDiffSpec, RampSpec, std::shared_ptr<ProgramState>> rep_;
  std::vector<Nat> ep_sums_;  // partial sums of prefix and of cycle
};

StreamClass classify_stream(const UpStream& f);

/// Derives a quasi form from values, given the known quadratic and linear coefficients.
QuasiForm fit_form(const UpStream& f, const Rational& a, const Rational& b, Nat period, Nat from);

/// Form of n -> f(m*n + c).
QuasiForm reindex_form(const QuasiForm& q, Nat m, Nat c);
/// Form of n -> f(n^2); only quasi-quadratic when f is eventually linear.
std::optional<QuasiForm> squares_form(const QuasiForm& q);

}  // namespace itl
