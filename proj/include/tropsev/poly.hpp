#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tropsev/rational.hpp"

namespace tropsev {

// Dense univariate polynomial, coefficient i multiplies x^i.
template <class C>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<C> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const C& a) { return Polynomial(std::vector<C>{a}); }
  static Polynomial monomial(const C& a, int deg) {
    std::vector<C> v(static_cast<std::size_t>(deg) + 1);
    v.back() = a;
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(C(1), 1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  int order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return static_cast<int>(i);
    return -1;
  }
  C coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return C(0);
    return c_[static_cast<std::size_t>(i)];
  }
  const std::vector<C>& coefficients() const { return c_; }
  const C& leading() const { return c_.back(); }
  bool is_constant() const { return c_.size() <= 1; }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<C> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(v));
  }

  // Multiply by x^k.
  Polynomial shifted(int k) const {
    if (is_zero()) return {};
    std::vector<C> v(static_cast<std::size_t>(k), C(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return Polynomial(std::move(v));
  }

  // p(x^s)
  Polynomial composed_power(int s) const {
    if (is_zero()) return {};
    std::vector<C> v(static_cast<std::size_t>(degree() * s) + 1, C(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * static_cast<std::size_t>(s)] = c_[i];
    return Polynomial(std::move(v));
  }

  template <class T>
  T evaluate(const T& point, const T& one) const {
    T acc = one * C(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * point + one * c_[i];
    return acc;
  }
  C operator()(const C& point) const {
    C acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * point + c_[i];
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<C> v(std::max(a.c_.size(), b.c_.size()), C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<C> v(a.c_);
    for (auto& x : v) x = -x;
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> v(a.c_.size() + b.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const C& s, const Polynomial& a) {
    std::vector<C> v(a.c_);
    for (auto& x : v) x *= s;
    return Polynomial(std::move(v));
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(C(1));
    Polynomial base = *this;
    while (e) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return result;
  }

  // Descending-degree rendering, e.g. "x^5-4x^4+6x^3-4x^2+x".
  std::string to_string(char var = 'x') const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      C a = c_[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      bool negative = a < 0;
      C mag = negative ? C(-a) : a;
      if (negative)
        os << '-';
      else if (!first)
        os << '+';
      first = false;
      bool unit = (mag == 1);
      if (i == 0) {
        os << mag.get_str();
        continue;
      }
      if (!unit) {
        std::string s = mag.get_str();
        if (s.find('/') != std::string::npos)
          os << '(' << s << ')';
        else
          os << s;
      }
      os << var;
      if (i > 1) os << '^' << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<C> c_;
};

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<Rational> v;
  v.reserve(p.coefficients().size());
  for (const auto& a : p.coefficients()) v.emplace_back(a);
  return RatPoly(std::move(v));
}

inline RatPoly monic(const RatPoly& p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading();
  return inv * p;
}

// Clears denominators and content; leading coefficient made positive.
inline IntPoly primitive_part(const RatPoly& p) {
  if (p.is_zero()) return {};
  Integer den = 1;
  for (const auto& a : p.coefficients()) den = lcm_of(den, a.get_den());
  std::vector<Integer> v;
  Integer content = 0;
  for (const auto& a : p.coefficients()) {
    Rational s = a * den;
    v.push_back(s.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), s.get_num_mpz_t());
  }
  if (p.leading() < 0) content = -content;
  for (auto& a : v) a /= content;
  return IntPoly(std::move(v));
}

inline IntPoly primitive_part(const IntPoly& p) { return primitive_part(to_rational(p)); }

inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {RatPoly{}, a};
  std::vector<Rational> q(static_cast<std::size_t>(da - db) + 1);
  Rational lead_inv = 1 / b.leading();
  for (int i = da; i >= db; --i) {
    Rational f = rem[static_cast<std::size_t>(i)] * lead_inv;
    q[static_cast<std::size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coefficients()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RatPoly(std::move(q)), RatPoly(std::move(rem))};
}

inline RatPoly operator%(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }

inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

struct ExtendedGcd {
  RatPoly g;  // monic
  RatPoly s;  // s*a + t*b = g
  RatPoly t;
};

inline ExtendedGcd extended_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly r0 = a, r1 = b;
  RatPoly s0 = RatPoly::constant(1), s1;
  RatPoly t0, t1 = RatPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    RatPoly s2 = s0 - q * s1;
    RatPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.leading();
  return {inv * r0, inv * s0, inv * t0};
}

// Quotient a/b when b divides a over Q, otherwise nullopt.
inline std::optional<RatPoly> exact_quotient(const RatPoly& a, const RatPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

// Quotient a/b when b divides a with an integer quotient.
inline std::optional<IntPoly> exact_quotient(const IntPoly& a, const IntPoly& b) {
  auto q = exact_quotient(to_rational(a), to_rational(b));
  if (!q) return std::nullopt;
  std::vector<Integer> v;
  for (const auto& c : q->coefficients()) {
    if (c.get_den() != 1) return std::nullopt;
    v.push_back(c.get_num());
  }
  return IntPoly(std::move(v));
}

}  // namespace tropsev
