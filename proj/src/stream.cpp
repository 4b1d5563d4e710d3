#include "itl/stream.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "itl/error.hpp"

namespace itl {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
  }
}

const char* to_string(StreamKind k) {
  switch (k) {
    case StreamKind::EPDiff: return "ep";
    case StreamKind::Ramp: return "ramp";
    default: return "program";
  }
}

Rational QuasiForm::at(Nat n) const {
  Rational rn(n);
  return a * rn * rn + b * rn + c[n % c.size()];
}

Tri StreamClass::in_gt_k(Nat k) const {
  if (min_diff > k) return Tri::True;
  return min_exact ? Tri::False : Tri::Unknown;
}

struct UpStream::ProgramState {
  ProgramSpec spec;
  std::mutex mu;
  std::vector<Nat> memo;
  Nat steps = 0;
};

UpStream UpStream::ep(Nat start, std::vector<Nat> prefix, std::vector<Nat> cycle) {
  if (cycle.empty()) throw MalformedSpec("empty difference cycle");
  for (Nat d : prefix) {
    if (d == 0) throw MalformedSpec("zero difference");
  }
  for (Nat d : cycle) {
    if (d == 0) throw MalformedSpec("zero difference");
  }
  UpStream s;
  std::vector<Nat> sums{0};
  for (Nat d : prefix) sums.push_back(checked_add(sums.back(), d));
  sums.push_back(0);
  for (Nat d : cycle) sums.push_back(checked_add(sums.back(), d));
  s.ep_sums_ = std::move(sums);
  s.rep_ = EPDiffSpec{start, std::move(prefix), std::move(cycle)};
  return s;
}

UpStream UpStream::ramp(Nat start, Nat alpha, Nat beta) {
  if (alpha == 0) throw MalformedSpec("ramp slope must be >= 1");
  if (beta == 0) throw MalformedSpec("ramp base must be >= 1");
  UpStream s;
  s.rep_ = RampSpec{start, alpha, beta};
  return s;
}

UpStream UpStream::program(ProgramSpec spec) {
  if (!spec.step) throw MalformedSpec("program without step function");
  if (spec.form && spec.form->c.empty()) throw MalformedSpec("quasi form with empty periodic part");
  UpStream s;
  auto state = std::make_shared<ProgramState>();
  state->memo.push_back(spec.initial);
  state->spec = std::move(spec);
  s.rep_ = std::move(state);
  return s;
}

StreamKind UpStream::kind() const {
  switch (rep_.index()) {
    case 0: return StreamKind::EPDiff;
    case 1: return StreamKind::Ramp;
    default: return StreamKind::Program;
  }
}

const ProgramSpec* UpStream::as_program() const {
  if (auto p = std::get_if<std::shared_ptr<ProgramState>>(&rep_)) return &(*p)->spec;
  return nullptr;
}

Nat UpStream::operator()(Nat n) const {
  if (auto e = std::get_if<EPDiffSpec>(&rep_)) {
    const std::size_t p = e->prefix.size();
    if (n <= p) return checked_add(e->start, ep_sums_[n]);
    const Nat rest = n - p;
    const std::size_t c = e->cycle.size();
    const Nat cycle_sum = ep_sums_.back();
    const Nat full = rest / c;
    const Nat part = ep_sums_[p + 1 + rest % c];
    return checked_add(checked_add(e->start, ep_sums_[p]), checked_add(checked_mul(full, cycle_sum), part));
  }
  if (auto r = std::get_if<RampSpec>(&rep_)) {
    // start + alpha*n(n-1)/2 + beta*n
    const Nat tri = (n % 2 == 0) ? checked_mul(n / 2, n == 0 ? 0 : n - 1) : checked_mul(n, (n - 1) / 2);
    return checked_add(r->start, checked_add(checked_mul(r->alpha, tri), checked_mul(r->beta, n)));
  }
  auto& st = *std::get<std::shared_ptr<ProgramState>>(rep_);
  std::lock_guard lock(st.mu);
  while (st.memo.size() <= n) {
    if (++st.steps > st.spec.budget) {
      throw ProgramDivergence("step budget of " + std::to_string(st.spec.budget) + " exhausted");
    }
    const Nat i = st.memo.size();
    const Nat v = st.spec.step(i, st.memo.back());
    if (v > kValueCap) throw ProgramDivergence("value exceeds 2^62");
    if (v <= st.memo.back()) throw MalformedSpec("program stream is not strictly increasing");
    st.memo.push_back(v);
  }
  return st.memo[n];
}

Nat UpStream::lower_index(Nat v) const {
  if ((*this)(0) >= v) return 0;
  // exponential search keeps program evaluation local
  Nat lo = 0, hi = 1;
  while ((*this)(hi) < v) {
    lo = hi;
    hi = hi * 2;
  }
  while (hi - lo > 1) {
    Nat mid = lo + (hi - lo) / 2;
    if ((*this)(mid) < v) lo = mid; else hi = mid;
  }
  return hi;
}

StreamClass UpStream::classify() const {
  StreamClass out;
  if (auto e = as_ep()) {
    Nat m = *std::min_element(e->cycle.begin(), e->cycle.end());
    for (Nat d : e->prefix) m = std::min(m, d);
    out.min_diff = m;
    out.min_exact = true;
    // bounded differences cannot exceed n for every n
    out.gt_id = Tri::False;
    out.divergent = Tri::False;
    out.superlinear = Tri::False;
  } else if (auto r = as_ramp()) {
    out.min_diff = r->beta;
    out.min_exact = true;
    out.gt_id = Tri::True;
    out.divergent = Tri::True;
    out.superlinear = Tri::False;
  } else {
    const auto& f = as_program()->facts;
    out.min_diff = f.diff_lower;
    out.gt_id = f.gt_id;
    out.divergent = f.divergent;
    out.superlinear = f.superlinear;
    if (f.superlinear == Tri::True) out.divergent = Tri::True;
  }
  return out;
}

StreamClass classify_stream(const UpStream& f) { return f.classify(); }

std::optional<QuasiForm> UpStream::form() const {
  if (auto e = as_ep()) {
    const Nat p = e->cycle.size();
    Rational slope(ep_sums_.back(), p);
    QuasiForm q{Rational(0), slope, std::vector<Rational>(p), e->prefix.size()};
    for (Nat n = q.from; n < q.from + p; ++n) q.c[n % p] = Rational((*this)(n)) - slope * Rational(n);
    return q;
  }
  if (auto r = as_ramp()) {
    Rational a(r->alpha, 2);
    return QuasiForm{a, Rational(r->beta) - a, {Rational(r->start)}, 0};
  }
  return as_program()->form;
}

bool UpStream::same_representation(const UpStream& other) const {
  if (kind() != other.kind()) return false;
  if (auto e = as_ep()) return *e == *other.as_ep();
  if (auto r = as_ramp()) return *r == *other.as_ramp();
  return as_program()->descriptor == other.as_program()->descriptor;
}

QuasiForm fit_form(const UpStream& f, const Rational& a, const Rational& b, Nat period, Nat from) {
  QuasiForm q{a, b, std::vector<Rational>(period), from};
  for (Nat n = from; n < from + period; ++n) {
    Rational rn(n);
    q.c[n % period] = Rational(f(n)) - a * rn * rn - b * rn;
  }
  return q;
}

QuasiForm reindex_form(const QuasiForm& q, Nat m, Nat c) {
  const Nat p = q.c.size();
  Rational rm(m), rc(c);
  QuasiForm out{q.a * rm * rm, Rational(2) * q.a * rm * rc + q.b * rm, std::vector<Rational>(p), 0};
  for (Nat r = 0; r < p; ++r) out.c[r] = q.a * rc * rc + q.b * rc + q.c[(m * r + c) % p];
  out.from = q.from <= c ? 0 : (q.from - c + m - 1) / m;
  return out;
}

std::optional<QuasiForm> squares_form(const QuasiForm& q) {
  if (q.a != 0) return std::nullopt;
  const Nat p = q.period();
  QuasiForm out{q.b, Rational(0), std::vector<Rational>(p), 0};
  for (Nat r = 0; r < p; ++r) out.c[r] = q.c[(r * r) % p];
  while (out.from * out.from < q.from) ++out.from;
  return out;
}

}  // namespace itl
