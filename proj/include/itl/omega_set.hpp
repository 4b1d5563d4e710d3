#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "itl/stream.hpp"

namespace itl {

/// Characteristic word: prefix bits, then the cycle bits repeated forever.
struct WordSpec {
  std::vector<bool> prefix;
  std::vector<bool> cycle;
  bool operator==(const WordSpec&) const = default;
};

/// An infinite subset of the naturals.
class OmegaSet {
 public:
  enum class Kind { Word, Range };

  static OmegaSet word(std::vector<bool> prefix, std::vector<bool> cycle);
  static OmegaSet word(std::string_view prefix, std::string_view cycle);
  static OmegaSet range(UpStream s);
  static OmegaSet full() { return word("", "1"); }
  static OmegaSet evens() { return word("", "10"); }

  Kind kind() const { return std::holds_alternative<WordSpec>(rep_) ? Kind::Word : Kind::Range; }
  const WordSpec* as_word() const { return std::get_if<WordSpec>(&rep_); }
  const UpStream* as_range() const { return std::get_if<UpStream>(&rep_); }

  bool contains(Nat m) const;
  /// |[0, b) ∩ X|
  Nat count_below(Nat b) const;
  /// |[a, b) ∩ X|
  Nat count_in(Nat a, Nat b) const;
  /// the i-th element in increasing order
  Nat enumerate(Nat i) const;
  Tri co_infinite() const;

  /// Word view of this set when it is ultimately periodic by representation.
  std::optional<OmegaSet> to_word() const;

  // word-only accessors
  Nat prefix_length() const { return as_word()->prefix.size(); }
  Nat cycle_length() const { return as_word()->cycle.size(); }
  Nat ones_in_prefix() const { return ones_prefix_.back(); }
  Nat ones_per_cycle() const { return ones_cycle_.back(); }

  std::string to_string() const;

 private:
  std::variant<WordSpec, UpStream> rep_;
  std::vector<Nat> ones_prefix_;  // ones_prefix_[i] = ones among prefix[0..i)
  std::vector<Nat> ones_cycle_;
  std::vector<Nat> cycle_ones_at_;  // offsets of the ones inside the cycle
};

std::string bits_to_string(const std::vector<bool>& bits);
std::vector<bool> bits_from_string(std::string_view s);

/// Range of an EPDiff stream as a word.
OmegaSet range_word(const UpStream& s);
/// Increasing enumeration; EPDiff for words.
UpStream enumeration_stream(const OmegaSet& x);
/// X ∪ (X+1) ∪ ... ∪ (X+r); words only.
OmegaSet thicken(const OmegaSet& x, Nat r);

}  // namespace itl
