#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tropsev/ring.hpp"

namespace tropsev {

// Truncated Puiseux series sum c_k t^{e_k} + O(t^T) over a CoeffRing.
// No truncation order means the series is exact (a finite sum).
class PuiseuxTrunc {
 public:
  struct Term {
    Rational exponent;
    RingElem coefficient;
  };

  PuiseuxTrunc() : ring_(CoeffRing::rationals()) {}
  explicit PuiseuxTrunc(RingPtr ring) : ring_(std::move(ring)) {}
  PuiseuxTrunc(RingPtr ring, std::vector<Term> terms, std::optional<Rational> trunc)
      : ring_(std::move(ring)), terms_(std::move(terms)), trunc_(std::move(trunc)) {
    normalize();
  }

  static PuiseuxTrunc constant(const RingElem& c) { return monomial(c, Rational(0)); }
  static PuiseuxTrunc constant(const RingPtr& ring, const Rational& c) { return constant(RingElem(ring, c)); }
  static PuiseuxTrunc monomial(const RingElem& c, const Rational& e) {
    return PuiseuxTrunc(c.ring(), {Term{e, c}}, std::nullopt);
  }
  static PuiseuxTrunc t_power(const RingPtr& ring, const Rational& e) { return monomial(RingElem::one(ring), e); }
  static PuiseuxTrunc zero_up_to(const RingPtr& ring, const Rational& trunc) { return PuiseuxTrunc(ring, {}, trunc); }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::optional<Rational>& truncation() const { return trunc_; }
  bool is_exact() const { return !trunc_.has_value(); }
  bool is_exact_zero() const { return terms_.empty() && !trunc_; }
  bool is_zero_up_to_truncation() const { return terms_.empty() && trunc_.has_value(); }
  bool has_terms() const { return !terms_.empty(); }

  // Lowest exponent, certified: the leading coefficient must be a unit.
  Rational valuation() const {
    if (terms_.empty()) {
      if (trunc_) throw ValuationUndetermined("series is zero up to O(t^" + trunc_->get_str() + ")");
      throw ValuationUndetermined("valuation of exact zero");
    }
    terms_.front().coefficient.nonzero_decided();
    return terms_.front().exponent;
  }
  const RingElem& leading_coefficient() const {
    if (terms_.empty()) throw ValuationUndetermined("leading coefficient of a series with no terms");
    return terms_.front().coefficient;
  }

  // First stored exponent, or the truncation order when no terms survive;
  // nullopt stands for +infinity (exact zero).
  std::optional<Rational> lower_bound() const {
    if (!terms_.empty()) return terms_.front().exponent;
    return trunc_;
  }

  RingElem coefficient_at(const Rational& e) const {
    for (const auto& term : terms_)
      if (term.exponent == e) return term.coefficient;
    if (trunc_ && e >= *trunc_) throw ValuationUndetermined("coefficient beyond truncation order");
    return RingElem::zero(ring_);
  }

  PuiseuxTrunc truncated(const Rational& order) const {
    std::optional<Rational> t = trunc_;
    if (!t || order < *t) t = order;
    return PuiseuxTrunc(ring_, terms_, t);
  }

  // Multiply by t^e.
  PuiseuxTrunc shifted(const Rational& e) const {
    std::vector<Term> v = terms_;
    for (auto& term : v) term.exponent += e;
    std::optional<Rational> t = trunc_;
    if (t) *t += e;
    return PuiseuxTrunc(ring_, std::move(v), t, true);
  }

  PuiseuxTrunc scaled(const RingElem& s) const {
    std::vector<Term> v = terms_;
    for (auto& term : v) term.coefficient = term.coefficient * s;
    return PuiseuxTrunc(ring_, std::move(v), trunc_);
  }

  friend PuiseuxTrunc operator+(const PuiseuxTrunc& a, const PuiseuxTrunc& b) {
    check(a, b);
    std::optional<Rational> t = min_opt(a.trunc_, b.trunc_);
    std::vector<Term> v;
    v.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exponent < b.terms_[j].exponent)) {
        v.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].exponent < a.terms_[i].exponent) {
        v.push_back(b.terms_[j++]);
      } else {
        RingElem s = a.terms_[i].coefficient + b.terms_[j].coefficient;
        if (!s.is_zero()) v.push_back(Term{a.terms_[i].exponent, std::move(s)});
        ++i;
        ++j;
      }
    }
    if (t) {
      while (!v.empty() && v.back().exponent >= *t) v.pop_back();
    }
    return PuiseuxTrunc(a.ring_, std::move(v), t, true);
  }
  friend PuiseuxTrunc operator-(const PuiseuxTrunc& a) {
    std::vector<Term> v = a.terms_;
    for (auto& term : v) term.coefficient = -term.coefficient;
    return PuiseuxTrunc(a.ring_, std::move(v), a.trunc_, true);
  }
  friend PuiseuxTrunc operator-(const PuiseuxTrunc& a, const PuiseuxTrunc& b) { return a + (-b); }

  friend PuiseuxTrunc operator*(const PuiseuxTrunc& a, const PuiseuxTrunc& b) {
    check(a, b);
    if (a.is_exact_zero() || b.is_exact_zero()) return PuiseuxTrunc(a.ring_);
    std::optional<Rational> t;
    if (a.trunc_) t = *a.trunc_ + *b.lower_bound();
    if (b.trunc_) t = min_opt(t, *b.trunc_ + *a.lower_bound());
    std::vector<Term> v;
    v.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        Rational e = x.exponent + y.exponent;
        if (t && e >= *t) break;
        v.push_back(Term{std::move(e), x.coefficient * y.coefficient});
      }
    }
    return PuiseuxTrunc(a.ring_, std::move(v), t);
  }
  PuiseuxTrunc& operator+=(const PuiseuxTrunc& o) { return *this = *this + o; }
  PuiseuxTrunc& operator-=(const PuiseuxTrunc& o) { return *this = *this - o; }
  PuiseuxTrunc& operator*=(const PuiseuxTrunc& o) { return *this = *this * o; }

  // Equality of the stored data (terms and truncation order).
  friend bool operator==(const PuiseuxTrunc& a, const PuiseuxTrunc& b) {
    if (a.trunc_ != b.trunc_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].exponent != b.terms_[i].exponent || a.terms_[i].coefficient != b.terms_[i].coefficient)
        return false;
    return true;
  }

  // Agreement below the smaller truncation order.
  bool agrees_with(const PuiseuxTrunc& other) const {
    PuiseuxTrunc d = *this - other;
    return d.terms_.empty();
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& term : terms_) {
      std::string c = term.coefficient.to_string();
      bool simple = term.coefficient.is_rational();
      std::string sign = "+";
      if (simple && c[0] == '-') {
        sign = "-";
        c.erase(0, 1);
      }
      if (first) {
        if (sign == "-") os << '-';
      } else {
        os << ' ' << sign << ' ';
      }
      first = false;
      if (!simple) c = "(" + c + ")";
      if (term.exponent == 0) {
        os << c;
        continue;
      }
      if (c != "1") os << c << '*';
      os << 't';
      if (term.exponent != 1) {
        std::string e = term.exponent.get_str();
        if (term.exponent < 0 || e.find('/') != std::string::npos) e = "(" + e + ")";
        os << '^' << e;
      }
    }
    if (trunc_) {
      if (!first) os << " + ";
      std::string e = trunc_->get_str();
      os << "O(t^" << e << ')';
    } else if (first) {
      os << '0';
    }
    return os.str();
  }

 private:
  PuiseuxTrunc(RingPtr ring, std::vector<Term> terms, std::optional<Rational> trunc, bool /*normalized*/)
      : ring_(std::move(ring)), terms_(std::move(terms)), trunc_(std::move(trunc)) {}

  static std::optional<Rational> min_opt(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
  }
  static void check(const PuiseuxTrunc& a, const PuiseuxTrunc& b) {
    if (a.ring_ != b.ring_ && !a.ring_->same_as(*b.ring_)) throw InvalidArgument("series over different rings");
  }

  void normalize() {
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const Term& x, const Term& y) { return x.exponent < y.exponent; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& term : terms_) {
      if (trunc_ && term.exponent >= *trunc_) break;
      if (!merged.empty() && merged.back().exponent == term.exponent)
        merged.back().coefficient += term.coefficient;
      else
        merged.push_back(std::move(term));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Term& x) { return x.coefficient.is_zero(); }),
                 merged.end());
    terms_ = std::move(merged);
  }

  RingPtr ring_;
  std::vector<Term> terms_;
  std::optional<Rational> trunc_;
};

inline PuiseuxTrunc puiseux_add(const PuiseuxTrunc& a, const PuiseuxTrunc& b) { return a + b; }
inline PuiseuxTrunc puiseux_mul(const PuiseuxTrunc& a, const PuiseuxTrunc& b) { return a * b; }

// Inverse known modulo t^target (earlier if the input's own truncation limits it).
// The leading coefficient must be a unit; a zero-divisor raises DynamicSplit.
inline PuiseuxTrunc puiseux_inv(const PuiseuxTrunc& p, const Rational& target) {
  if (p.terms().empty()) throw ValuationUndetermined("inverse of a series with no terms");
  const Rational v = p.terms().front().exponent;
  const RingElem c_inv = p.terms().front().coefficient.inverse();
  Rational result_trunc = target;
  if (p.truncation()) result_trunc = std::min(result_trunc, Rational(*p.truncation() - 2 * v));
  // 1/p = c^{-1} t^{-v} / (1 + u), u = sum over later terms
  const Rational need = result_trunc + v;  // 1/(1+u) required modulo t^need
  const RingPtr& ring = p.ring();
  if (need <= 0) return PuiseuxTrunc::zero_up_to(ring, result_trunc);

  struct Step {
    long offset;
    RingElem coeff;
  };
  Integer lattice = 1;
  for (std::size_t k = 1; k < p.terms().size(); ++k) {
    Rational gap = p.terms()[k].exponent - v;
    lattice = lcm_of(lattice, gap.get_den());
  }
  Integer count_z = ceil_of(need * lattice);
  if (count_z > 2000000) throw PrecisionExhausted("series inversion lattice too fine");
  const long count = count_z.get_si();
  std::vector<Step> u;
  for (std::size_t k = 1; k < p.terms().size(); ++k) {
    Rational gap = (p.terms()[k].exponent - v) * lattice;
    long off = gap.get_num().get_si();
    if (off >= count) break;
    u.push_back(Step{off, p.terms()[k].coefficient * c_inv});
  }
  std::vector<RingElem> r(static_cast<std::size_t>(count), RingElem::zero(ring));
  r[0] = RingElem::one(ring);
  for (long k = 1; k < count; ++k) {
    RingElem acc = RingElem::zero(ring);
    for (const auto& step : u) {
      if (step.offset > k) break;
      const RingElem& prev = r[static_cast<std::size_t>(k - step.offset)];
      if (!prev.is_zero()) acc -= step.coeff * prev;
    }
    r[static_cast<std::size_t>(k)] = std::move(acc);
  }
  std::vector<PuiseuxTrunc::Term> terms;
  Rational step_size(Integer(1), lattice);
  for (long k = 0; k < count; ++k) {
    if (r[static_cast<std::size_t>(k)].is_zero()) continue;
    terms.push_back({Rational(step_size * k) - v, r[static_cast<std::size_t>(k)] * c_inv});
  }
  return PuiseuxTrunc(ring, std::move(terms), result_trunc);
}

// num / den known modulo t^target, by the same lattice recurrence run
// directly on the quotient; den's leading coefficient must be a unit.
inline PuiseuxTrunc puiseux_div(const PuiseuxTrunc& num, const PuiseuxTrunc& den, const Rational& target) {
  if (den.terms().empty()) throw ValuationUndetermined("division by a series with no terms");
  const RingPtr& ring = den.ring();
  const Rational vd = den.terms().front().exponent;
  Rational result_trunc = target;
  if (num.truncation()) result_trunc = std::min(result_trunc, Rational(*num.truncation() - vd));
  if (num.terms().empty()) {
    if (num.is_exact_zero() && den.is_exact()) return PuiseuxTrunc(ring);
    Rational lb = num.is_exact_zero() ? result_trunc : Rational(*num.truncation() - vd);
    return PuiseuxTrunc::zero_up_to(ring, std::min(result_trunc, lb));
  }
  const Rational vn = num.terms().front().exponent;
  if (den.truncation()) result_trunc = std::min(result_trunc, Rational(*den.truncation() - 2 * vd + vn));
  const Rational start = vn - vd;
  if (result_trunc <= start) return PuiseuxTrunc::zero_up_to(ring, result_trunc);

  Integer lattice = 1;
  for (const auto& term : den.terms()) lattice = lcm_of(lattice, Rational(term.exponent - vd).get_den());
  for (const auto& term : num.terms()) lattice = lcm_of(lattice, Rational(term.exponent - vn).get_den());
  Integer count_z = ceil_of((result_trunc - start) * lattice);
  if (count_z > 2000000) throw PrecisionExhausted("series division lattice too fine");
  const long count = count_z.get_si();
  auto offset = [&](const Rational& gap) { return Rational(gap * lattice).get_num().get_si(); };

  std::vector<RingElem> n(static_cast<std::size_t>(count), RingElem::zero(ring));
  for (const auto& term : num.terms()) {
    long k = offset(term.exponent - vn);
    if (k >= count) break;
    n[static_cast<std::size_t>(k)] = term.coefficient;
  }
  struct Step {
    long offset;
    RingElem coeff;
  };
  const RingElem d0_inv = den.terms().front().coefficient.inverse();
  std::vector<Step> d;
  for (std::size_t k = 1; k < den.terms().size(); ++k) {
    long off = offset(den.terms()[k].exponent - vd);
    if (off >= count) break;
    d.push_back(Step{off, den.terms()[k].coefficient});
  }
  std::vector<RingElem> q(static_cast<std::size_t>(count), RingElem::zero(ring));
  for (long k = 0; k < count; ++k) {
    RingElem acc = n[static_cast<std::size_t>(k)];
    for (const auto& step : d) {
      if (step.offset > k) break;
      const RingElem& prev = q[static_cast<std::size_t>(k - step.offset)];
      if (!prev.is_zero()) acc -= step.coeff * prev;
    }
    if (!acc.is_zero()) q[static_cast<std::size_t>(k)] = acc * d0_inv;
  }
  std::vector<PuiseuxTrunc::Term> terms;
  Rational step_size(Integer(1), lattice);
  for (long k = 0; k < count; ++k)
    if (!q[static_cast<std::size_t>(k)].is_zero()) terms.push_back({Rational(start + step_size * k), q[static_cast<std::size_t>(k)]});
  return PuiseuxTrunc(ring, std::move(terms), result_trunc);
}

inline PuiseuxTrunc pow(const PuiseuxTrunc& base, unsigned e) {
  PuiseuxTrunc result = PuiseuxTrunc::constant(base.ring(), 1);
  PuiseuxTrunc b = base;
  while (e) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e) b *= b;
  }
  return result;
}

// Horner evaluation of an integer polynomial at a series.
inline PuiseuxTrunc eval_intpoly_at_series(const IntPoly& p, const PuiseuxTrunc& b) {
  const RingPtr& ring = b.ring();
  PuiseuxTrunc acc(ring);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * b;
    if (p.coeff(i) != 0) acc += PuiseuxTrunc::constant(ring, Rational(p.coeff(i)));
  }
  return acc;
}

}  // namespace tropsev
