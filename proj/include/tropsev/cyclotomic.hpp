#pragma once

#include <utility>
#include <vector>

#include "tropsev/poly.hpp"

namespace tropsev {

// x^d - 1
inline IntPoly unity_binomial(int d) {
  std::vector<Integer> v(static_cast<std::size_t>(d) + 1, Integer(0));
  v.front() = -1;
  v.back() = 1;
  return IntPoly(std::move(v));
}

// Phi_d = prod_{e | d} (x^e - 1)^{mu(d/e)}
inline IntPoly cyclotomic(int d) {
  if (d < 1) throw InvalidArgument("cyclotomic order must be positive");
  IntPoly num = IntPoly::constant(1);
  IntPoly den = IntPoly::constant(1);
  for (int e : divisors_of(d)) {
    int mu = mobius(d / e);
    if (mu == 1)
      num *= unity_binomial(e);
    else if (mu == -1)
      den *= unity_binomial(e);
  }
  auto q = exact_quotient(num, den);
  if (!q) throw Error("cyclotomic: inexact division");
  return *q;
}

inline IntPoly squarefree_part(const IntPoly& p) {
  if (p.is_zero()) throw InvalidArgument("squarefree_part of the zero polynomial");
  RatPoly rp = to_rational(p);
  RatPoly g = gcd(rp, rp.derivative());
  return primitive_part(divmod(rp, g).first);
}

struct SquarefreeFactor {
  RatPoly factor;  // monic, squarefree, pairwise coprime across the decomposition
  int multiplicity;
};

// Yun's algorithm over Q; constant factors are omitted.
inline std::vector<SquarefreeFactor> squarefree_decomposition(const RatPoly& p) {
  if (p.is_zero()) throw InvalidArgument("squarefree decomposition of zero");
  std::vector<SquarefreeFactor> out;
  RatPoly f = monic(p);
  RatPoly df = f.derivative();
  RatPoly a = gcd(f, df);
  RatPoly b = divmod(f, a).first;
  RatPoly c = divmod(df, a).first;
  RatPoly d = c - b.derivative();
  int k = 1;
  while (!b.is_constant()) {
    RatPoly g = gcd(b, d);
    if (!g.is_constant()) out.push_back({monic(g), k});
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++k;
  }
  return out;
}

// Largest k with f^k | p (p nonzero, f non-constant).
inline int multiplicity_of_factor(const IntPoly& p, const IntPoly& f) {
  if (p.is_zero() || f.is_constant()) throw InvalidArgument("multiplicity_of_factor: bad arguments");
  RatPoly rp = to_rational(p);
  RatPoly rf = to_rational(f);
  int k = 0;
  while (true) {
    auto q = exact_quotient(rp, rf);
    if (!q) return k;
    rp = std::move(*q);
    ++k;
  }
}

}  // namespace tropsev
