#include "itl/verdict.hpp"

namespace itl {

Verdict Verdict::negated() const {
  Verdict v = *this;
  if (value == Tri::True) v.value = Tri::False;
  else if (value == Tri::False) v.value = Tri::True;
  return v;
}

std::string Verdict::to_string() const {
  if (value == Tri::True) return "True";
  if (value == Tri::False) return "False";
  return "Unknown(horizon=" + std::to_string(horizon) + ", evidence=" + std::to_string(evidence) + ")";
}

const char* to_string(Quant q) { return q == Quant::Forall ? "forall" : "exists"; }

}  // namespace itl
