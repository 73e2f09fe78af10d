#include <gtest/gtest.h>

#include <random>

#include "tropsev/puiseux.hpp"

using namespace tropsev;

namespace {

IntPoly ip(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long a : c) v.emplace_back(a);
  return IntPoly(std::move(v));
}

Rational q(long a, long b = 1) { return make_rational(a, b); }

PuiseuxTrunc series(const RingPtr& ring, std::vector<std::pair<Rational, Rational>> terms,
                    std::optional<Rational> trunc = std::nullopt) {
  std::vector<PuiseuxTrunc::Term> v;
  for (auto& [e, c] : terms) v.push_back({e, RingElem(ring, c)});
  return PuiseuxTrunc(ring, std::move(v), trunc);
}

}  // namespace

TEST(Cyclotomic, SmallOrders) {
  EXPECT_EQ(cyclotomic(1), ip({-1, 1}));
  EXPECT_EQ(cyclotomic(2), ip({1, 1}));
  // x^6 - 1 divided by the lower-order factors, computed by long division here.
  IntPoly rest = unity_binomial(6);
  for (const IntPoly& f : {ip({-1, 1}), ip({1, 1}), ip({1, 1, 1})}) rest = *exact_quotient(rest, f);
  EXPECT_EQ(cyclotomic(6), rest);
  EXPECT_EQ(cyclotomic(6), ip({1, -1, 1}));
}

TEST(Cyclotomic, ProductOverDivisorsIsBinomial) {
  for (int d = 1; d <= 50; ++d) {
    IntPoly prod = IntPoly::constant(1);
    for (int e : divisors_of(d)) prod *= cyclotomic(e);
    EXPECT_EQ(prod, unity_binomial(d)) << "d=" << d;
  }
}

TEST(Squarefree, Examples) {
  IntPoly xm1 = ip({-1, 1});
  EXPECT_EQ(squarefree_part(IntPoly::x() * xm1.pow(4)), IntPoly::x() * xm1);
  EXPECT_EQ(squarefree_part(xm1), xm1);
  IntPoly p = cyclotomic(2).pow(2) * cyclotomic(3);
  IntPoly s = squarefree_part(p);
  EXPECT_EQ(s, cyclotomic(2) * cyclotomic(3));
  EXPECT_TRUE(exact_quotient(p, s).has_value());
  EXPECT_THROW(squarefree_part(IntPoly{}), InvalidArgument);
}

TEST(Squarefree, RandomProductsOfSmallIrreducibles) {
  std::mt19937 rng(7);
  std::vector<IntPoly> pool = {ip({-1, 1}), ip({1, 1}), ip({1, 1, 1}), ip({1, 0, 1}), ip({-2, 0, 1}), ip({1, 4, 1}),
                               ip({3, 2}),  ip({-5, 1}), cyclotomic(5), cyclotomic(7)};
  for (int trial = 0; trial < 100; ++trial) {
    IntPoly p = IntPoly::constant(Integer(1 + static_cast<int>(rng() % 3)));
    for (int k = 0; k < 4; ++k) p *= pool[rng() % pool.size()].pow(1 + rng() % 3);
    IntPoly s = squarefree_part(p);
    ASSERT_TRUE(exact_quotient(p, s).has_value());
    RatPoly rs = to_rational(s);
    EXPECT_TRUE(gcd(rs, rs.derivative()).is_constant());
    // same root set: p divides a power of s
    EXPECT_TRUE(exact_quotient(s.pow(static_cast<unsigned>(p.degree())), p).has_value() ||
                exact_quotient(to_rational(s.pow(static_cast<unsigned>(p.degree()))), to_rational(p)).has_value());
  }
}

TEST(Squarefree, YunDecompositionRecombines) {
  IntPoly p = IntPoly::x() * ip({-1, 1}).pow(4) * ip({1, 4, 1}).pow(2) * cyclotomic(3);
  auto parts = squarefree_decomposition(to_rational(p));
  RatPoly prod = RatPoly::constant(1);
  for (const auto& part : parts) prod *= part.factor.pow(static_cast<unsigned>(part.multiplicity));
  EXPECT_EQ(prod, monic(to_rational(p)));
  ASSERT_EQ(parts.size(), 3U);
  EXPECT_EQ(parts[0].multiplicity, 1);
  EXPECT_EQ(parts[1].multiplicity, 2);
  EXPECT_EQ(parts[2].multiplicity, 4);
}

TEST(Ring, CyclotomicGeneratorHasExactOrder) {
  for (int d = 1; d <= 24; ++d) {
    RingPtr ring = CoeffRing::cyclotomic(d);
    RingElem beta = RingElem::generator(ring);
    EXPECT_TRUE(beta.pow(d).is_one()) << d;
    for (int e = 1; e < d; ++e) EXPECT_FALSE(beta.pow(e).is_one()) << d << " " << e;
  }
}

TEST(Ring, DynamicSplitOnZeroDivisor) {
  RatPoly m = to_rational(ip({-1, 1}) * ip({1, 1}) * ip({1, 4, 1}));
  RingPtr ring = CoeffRing::dynamic(m);
  RingElem y = RingElem::generator(ring);
  RingElem z = y * y - RingElem::one(ring);  // vanishes at +-1 only
  try {
    (void)z.inverse();
    FAIL() << "expected a split";
  } catch (const DynamicSplit& s) {
    EXPECT_EQ(s.first, to_rational(ip({-1, 0, 1})));
    EXPECT_EQ(s.second, to_rational(ip({1, 4, 1})));
  }
  EXPECT_THROW(z.nonzero_decided(), DynamicSplit);
  RingElem u = y + RingElem(ring, q(3));
  EXPECT_TRUE(u.nonzero_decided());
  EXPECT_TRUE((u * u.inverse()).is_one());
  EXPECT_THROW(CoeffRing::dynamic(to_rational(ip({1, 1}).pow(2))), InvalidArgument);
}

TEST(Puiseux, ProductAndInverseExamples) {
  RingPtr Q = CoeffRing::rationals();
  PuiseuxTrunc a = series(Q, {{0, 1}, {1, 1}}, q(3));
  PuiseuxTrunc b = series(Q, {{0, 1}, {1, -1}}, q(3));
  EXPECT_EQ(a * b, series(Q, {{0, 1}, {2, -1}}, q(3)));
  PuiseuxTrunc one_plus_t = series(Q, {{0, 1}, {1, 1}});
  EXPECT_EQ(puiseux_inv(one_plus_t, q(3)), series(Q, {{0, 1}, {1, -1}, {2, 1}}, q(3)));
  EXPECT_THROW(puiseux_inv(PuiseuxTrunc::zero_up_to(Q, q(2)), q(3)), ValuationUndetermined);
}

TEST(Puiseux, QuadraticRingProduct) {
  RingPtr ring = CoeffRing::dynamic(to_rational(ip({1, 4, 1})));
  RingElem y = RingElem::generator(ring);
  PuiseuxTrunc t = PuiseuxTrunc::t_power(ring, 1);
  PuiseuxTrunc Y = PuiseuxTrunc::constant(y);
  PuiseuxTrunc prod = ((Y + t) * (Y - t)).truncated(q(5));
  RingElem expected_const(ring, RatPoly{q(-1), q(-4)});
  EXPECT_EQ(prod.coefficient_at(0), expected_const);
  EXPECT_EQ(prod.coefficient_at(2), RingElem(ring, q(-1)));
  EXPECT_EQ(prod.terms().size(), 2U);
}

TEST(Puiseux, ZeroUpToTruncationIsNotExactZero) {
  RingPtr Q = CoeffRing::rationals();
  PuiseuxTrunc a = series(Q, {{0, 1}, {1, 1}}, q(2));
  PuiseuxTrunc d = a - series(Q, {{0, 1}, {1, 1}});
  EXPECT_TRUE(d.is_zero_up_to_truncation());
  EXPECT_FALSE(d.is_exact_zero());
  EXPECT_THROW(d.valuation(), ValuationUndetermined);
  EXPECT_TRUE(PuiseuxTrunc(Q).is_exact_zero());
}

TEST(Puiseux, RandomInverseTimesSeriesIsOne) {
  RingPtr Q = CoeffRing::rationals();
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-9, 9), den(1, 4), num(-8, 8), count(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::pair<Rational, Rational>> terms;
    int lead = 0;
    while (lead == 0) lead = coef(rng);
    Rational v = make_rational(num(rng), den(rng));
    terms.push_back({v, q(lead)});
    int k = count(rng);
    for (int i = 0; i < k; ++i) terms.push_back({v + make_rational(1 + std::abs(num(rng)), den(rng)), q(coef(rng))});
    bool truncated = trial % 2 == 0;
    PuiseuxTrunc p = series(Q, terms, truncated ? std::optional<Rational>(v + 6) : std::nullopt);
    PuiseuxTrunc inv = puiseux_inv(p, q(4));
    PuiseuxTrunc prod = p * inv;
    ASSERT_TRUE(prod.truncation().has_value());
    Rational inv_trunc = truncated ? std::min(Rational(4), Rational(6 - v)) : Rational(4);
    Rational expected = truncated ? std::min(Rational(6), Rational(inv_trunc + v)) : Rational(inv_trunc + v);
    EXPECT_EQ(*prod.truncation(), expected);
    EXPECT_TRUE(prod.agrees_with(PuiseuxTrunc::constant(Q, 1))) << p.to_string() << " -> " << prod.to_string();
  }
}

// Division against multiplication by the inverse, over a quadratic ring.
TEST(Puiseux, RandomDivisionMatchesInverse) {
  RingPtr R = CoeffRing::cyclotomic(3);
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> coef(-5, 5), den(1, 3), num(-6, 6), count(1, 5);
  auto random_series = [&](bool nonzero_lead) {
    std::vector<PuiseuxTrunc::Term> terms;
    Rational v = make_rational(num(rng), den(rng));
    RingElem lead(R, RatPoly({Rational(coef(rng)), Rational(coef(rng))}));
    while (nonzero_lead && lead.is_zero()) lead = RingElem(R, RatPoly({Rational(coef(rng)), Rational(1)}));
    terms.push_back({v, lead});
    int k = count(rng);
    for (int i = 0; i < k; ++i)
      terms.push_back({v + make_rational(1 + std::abs(num(rng)), den(rng)), RingElem(R, Rational(coef(rng)))});
    return PuiseuxTrunc(R, std::move(terms), std::nullopt);
  };
  for (int trial = 0; trial < 300; ++trial) {
    PuiseuxTrunc a = random_series(false), b = random_series(true);
    PuiseuxTrunc quot = puiseux_div(a, b, q(5));
    ASSERT_TRUE(quot.truncation().has_value());
    EXPECT_LE(*quot.truncation(), q(5));
    PuiseuxTrunc via_inv = a * puiseux_inv(b, q(5) - *a.lower_bound() + b.valuation());
    EXPECT_TRUE(quot.agrees_with(via_inv)) << a.to_string() << " / " << b.to_string();
    EXPECT_TRUE((quot * b).agrees_with(a));
  }
  PuiseuxTrunc zero(R);
  EXPECT_TRUE(puiseux_div(zero, random_series(true), q(3)).is_exact_zero());
  EXPECT_THROW(puiseux_div(random_series(true), PuiseuxTrunc::zero_up_to(R, q(2)), q(3)), ValuationUndetermined);
}

TEST(Puiseux, HornerExamples) {
  RingPtr Q = CoeffRing::rationals();
  IntPoly p = IntPoly::x() * ip({-1, 1}).pow(4);
  PuiseuxTrunc b = series(Q, {{0, 1}, {1, 1}}, q(6));
  EXPECT_EQ(eval_intpoly_at_series(p, b), series(Q, {{4, 1}, {5, 1}}, q(6)));

  RingPtr C2 = CoeffRing::cyclotomic(2);
  PuiseuxTrunc b2 = PuiseuxTrunc::constant(RingElem::generator(C2)) + PuiseuxTrunc::t_power(C2, 1);
  PuiseuxTrunc r = eval_intpoly_at_series(ip({-1, 1}), b2);
  EXPECT_EQ(r.coefficient_at(0), RingElem(C2, q(-2)));
  EXPECT_EQ(r.coefficient_at(1), RingElem(C2, q(1)));
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational(" 3/6 "), q(1, 2));
  EXPECT_EQ(parse_rational("-4"), q(-4));
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("x"), InvalidArgument);
  auto v = parse_rational_list("2,1/2,-3");
  ASSERT_EQ(v.size(), 3U);
  EXPECT_EQ(v[1], q(1, 2));
  EXPECT_EQ((ip({0, 1, -4, 6, -4, 1})).to_string(), "x^5-4x^4+6x^3-4x^2+x");
}
