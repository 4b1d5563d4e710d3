#include "itl/rational.hpp"

#include <numeric>

#include "itl/error.hpp"

namespace itl {

Nat checked_add(Nat a, Nat b) {
  if (a > kValueCap || b > kValueCap - a) throw ProgramDivergence("value exceeds 2^62");
  return a + b;
}

Nat checked_mul(Nat a, Nat b) {
  if (a != 0 && b > kValueCap / a) throw ProgramDivergence("value exceeds 2^62");
  return a * b;
}

namespace {

BigInt parse_int(const std::string& s) {
  if (s.empty()) throw MalformedSpec("empty number");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw MalformedSpec("bad number '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') throw MalformedSpec("bad number '" + s + "'");
  }
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw MalformedSpec("zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt floor(const Rational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

BigInt ceil(const Rational& r) { return -floor(-r); }

Rational mod(const Rational& r, const Rational& m) { return r - m * Rational(floor(r / m)); }

Nat gcd(Nat a, Nat b) { return std::gcd(a, b); }
Nat lcm(Nat a, Nat b) { return a / std::gcd(a, b) * b; }

}  // namespace itl
