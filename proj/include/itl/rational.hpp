#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace itl {

using Nat = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Values above this bound are treated as divergence by every stream.
inline constexpr Nat kValueCap = Nat{1} << 62;

Nat checked_add(Nat a, Nat b);
Nat checked_mul(Nat a, Nat b);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

/// Parses "p/q", "p" or a decimal-free integer string.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);
/// r mod m in [0, m) for m > 0.
Rational mod(const Rational& r, const Rational& m);

Nat gcd(Nat a, Nat b);
Nat lcm(Nat a, Nat b);

}  // namespace itl
