#pragma once

#include <memory>
#include <string>
#include <utility>

#include "tropsev/cyclotomic.hpp"

namespace tropsev {

class CoeffRing;
using RingPtr = std::shared_ptr<const CoeffRing>;

// Q[y]/(modulus) for a monic squarefree modulus.
class CoeffRing {
 public:
  enum class Kind { rationals, cyclotomic, dynamic };

  static RingPtr rationals() {
    static const RingPtr ring(new CoeffRing(Kind::rationals, 0, RatPoly::x()));
    return ring;
  }

  static RingPtr cyclotomic(int d) {
    if (d < 1) throw InvalidArgument("cyclotomic ring order must be positive");
    return RingPtr(new CoeffRing(Kind::cyclotomic, d, to_rational(tropsev::cyclotomic(d))));
  }

  static RingPtr dynamic(const RatPoly& modulus) {
    if (modulus.degree() < 1) throw InvalidArgument("dynamic ring modulus must be non-constant");
    RatPoly m = monic(modulus);
    if (!gcd(m, m.derivative()).is_constant()) throw InvalidArgument("dynamic ring modulus must be squarefree");
    return RingPtr(new CoeffRing(Kind::dynamic, 0, std::move(m)));
  }

  Kind kind() const { return kind_; }
  int order() const { return order_; }
  const RatPoly& modulus() const { return modulus_; }
  int degree() const { return modulus_.degree(); }

  bool same_as(const CoeffRing& other) const { return this == &other || modulus_ == other.modulus_; }

  std::string describe() const {
    switch (kind_) {
      case Kind::rationals:
        return "rationals";
      case Kind::cyclotomic:
        return "cyclotomic(" + std::to_string(order_) + ")";
      case Kind::dynamic:
        return "dynamic(" + modulus_.to_string('y') + ")";
    }
    return "?";
  }

 private:
  CoeffRing(Kind k, int order, RatPoly m) : kind_(k), order_(order), modulus_(std::move(m)) {}
  Kind kind_;
  int order_;
  RatPoly modulus_;
};

// Raised when a dynamic-ring element is a nonzero zero-divisor. The modulus
// factors as first * second with both factors monic, coprime, non-constant;
// the element vanishes modulo `first` and is a unit modulo `second`.
class DynamicSplit : public Error {
 public:
  DynamicSplit(RatPoly first, RatPoly second)
      : Error("dynamic ring split: " + first.to_string('y') + " | " + second.to_string('y')),
        first(std::move(first)),
        second(std::move(second)) {}
  RatPoly first;
  RatPoly second;
};

class RingElem {
 public:
  RingElem() : ring_(CoeffRing::rationals()) {}
  RingElem(RingPtr ring, const Rational& a) : ring_(std::move(ring)), rep_(RatPoly::constant(a)) { reduce(); }
  RingElem(RingPtr ring, RatPoly rep) : ring_(std::move(ring)), rep_(std::move(rep)) { reduce(); }

  // Class of y.
  static RingElem generator(const RingPtr& ring) { return RingElem(ring, RatPoly::x()); }
  static RingElem zero(const RingPtr& ring) { return RingElem(ring, Rational(0)); }
  static RingElem one(const RingPtr& ring) { return RingElem(ring, Rational(1)); }

  const RingPtr& ring() const { return ring_; }
  const RatPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_one() const { return rep_.degree() == 0 && rep_.leading() == 1; }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rational as_rational() const {
    if (!is_rational()) throw InvalidArgument("ring element is not a rational constant");
    return rep_.coeff(0);
  }

  // True for units, false for zero; throws DynamicSplit for other zero-divisors.
  bool nonzero_decided() const {
    if (is_zero()) return false;
    RatPoly g = gcd(rep_, ring_->modulus());
    if (g.is_constant()) return true;
    throw DynamicSplit(g, divmod(ring_->modulus(), g).first);
  }

  RingElem inverse() const {
    if (is_zero()) throw InvalidArgument("inverse of zero ring element");
    ExtendedGcd e = extended_gcd(rep_, ring_->modulus());
    if (!e.g.is_constant()) throw DynamicSplit(e.g, divmod(ring_->modulus(), e.g).first);
    return RingElem(ring_, e.s);
  }

  RingElem pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RingElem result = one(ring_);
    RingElem base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  friend RingElem operator+(const RingElem& a, const RingElem& b) {
    check(a, b);
    return RingElem(a.ring_, a.rep_ + b.rep_, true);
  }
  friend RingElem operator-(const RingElem& a, const RingElem& b) {
    check(a, b);
    return RingElem(a.ring_, a.rep_ - b.rep_, true);
  }
  friend RingElem operator-(const RingElem& a) { return RingElem(a.ring_, -a.rep_, true); }
  friend RingElem operator*(const RingElem& a, const RingElem& b) {
    check(a, b);
    if (a.is_zero() || b.is_zero()) return zero(a.ring_);
    if (b.rep_.degree() == 0) return RingElem(a.ring_, b.rep_.leading() * a.rep_, true);
    if (a.rep_.degree() == 0) return RingElem(a.ring_, a.rep_.leading() * b.rep_, true);
    return RingElem(a.ring_, a.rep_ * b.rep_);
  }
  friend RingElem operator*(const Rational& s, const RingElem& a) { return RingElem(a.ring_, s * a.rep_, true); }
  friend RingElem operator/(const RingElem& a, const RingElem& b) { return a * b.inverse(); }
  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
  RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
  RingElem& operator*=(const RingElem& o) { return *this = *this * o; }
  friend bool operator==(const RingElem& a, const RingElem& b) {
    return a.ring_->same_as(*b.ring_) && a.rep_ == b.rep_;
  }
  friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }

  // Rendered as a polynomial in the generator y.
  std::string to_string() const { return rep_.to_string('y'); }

 private:
  RingElem(RingPtr ring, RatPoly rep, bool /*already_reduced*/) : ring_(std::move(ring)), rep_(std::move(rep)) {}
  static void check(const RingElem& a, const RingElem& b) {
    if (a.ring_ != b.ring_ && !a.ring_->same_as(*b.ring_)) throw InvalidArgument("ring elements from different rings");
  }
  void reduce() {
    if (rep_.degree() >= ring_->degree()) rep_ = rep_ % ring_->modulus();
  }
  RingPtr ring_;
  RatPoly rep_;
};

}  // namespace tropsev
