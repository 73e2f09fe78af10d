#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support/oracles.hpp"
#include "tropsev/minors.hpp"

using namespace tropsev;

namespace {

IntPoly ip(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long a : c) v.emplace_back(a);
  return IntPoly(std::move(v));
}

Rational q(long a, long b = 1) { return make_rational(a, b); }

IndexSet4 random_J(std::mt19937& rng, int top) {
  std::set<int> s;
  while (s.size() < 4) s.insert(static_cast<int>(rng() % static_cast<unsigned>(top + 1)));
  std::vector<int> v(s.begin(), s.end());
  return IndexSet4(v[0], v[1], v[2], v[3]);
}

bool is_palindromic_translated(const IntPoly& d, const IndexSet4& J) {
  // with i1 = 0 after dividing by x^{2 i1}: D(x) = x^{i2+i3+i4} D(1/x)
  int s = J[0];
  int total = (J[1] - s) + (J[2] - s) + (J[3] - s);
  for (int k = 0; k <= total; ++k)
    if (d.coeff(k + 2 * s) != d.coeff(total - k + 2 * s)) return false;
  return true;
}

}  // namespace

TEST(MinorPoly, BaseCaseAndLaws) {
  IntPoly xm1 = ip({-1, 1});
  EXPECT_EQ(minor_poly({0, 1, 2, 3}).poly, IntPoly::x() * xm1.pow(4));
  EXPECT_EQ(minor_poly({2, 3, 4, 5}).poly, (IntPoly::x() * xm1.pow(4)).shifted(4));
  IntPoly x2 = IntPoly::monomial(Integer(1), 2);
  EXPECT_EQ(minor_poly({0, 2, 4, 6}).poly, Integer(4) * x2 * (x2 - IntPoly::constant(1)).pow(4));
}

TEST(MinorPoly, ClosedFormMatchesLeibnizOnRandomSets) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    IndexSet4 J = random_J(rng, 30);
    IntPoly d = minor_poly(J).poly;
    ASSERT_EQ(d, oracle_ref::leibniz_minor(J.idx)) << J.to_string();
    EXPECT_EQ(d.degree(), J[2] + J[3]);
    EXPECT_EQ(d.order(), J[0] + J[1]);
    Integer lc = Integer((J[1] - J[0]) * (J[3] - J[2]));
    EXPECT_EQ(abs(d.leading()), lc);
    EXPECT_EQ(abs(d.coeff(d.order())), lc);
    EXPECT_TRUE(is_palindromic_translated(d, J));
  }
}

TEST(UnityRootMultiplicity, Examples) {
  EXPECT_EQ(unity_root_multiplicity({0, 2, 4, 6}, 2), 4);
  EXPECT_EQ(unity_root_multiplicity({0, 1, 2, 3}, 1), 4);
  EXPECT_EQ(unity_root_multiplicity({1, 2, 4, 5}, 2), 0);
  IntPoly d = minor_poly({1, 2, 4, 5}).poly;
  auto rest = exact_quotient(d, IntPoly::monomial(Integer(1), 3) * ip({-1, 1}).pow(4));
  ASSERT_TRUE(rest.has_value());
  EXPECT_EQ(*rest, ip({1, 4, 1}));
}

TEST(UnityRootMultiplicity, CongruenceConstructedCases) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 2 + static_cast<int>(rng() % 5);
    int r = static_cast<int>(rng() % static_cast<unsigned>(d));
    bool all4 = trial % 2 == 0;
    std::set<int> s;
    while (static_cast<int>(s.size()) < (all4 ? 4 : 3)) s.insert(r + d * static_cast<int>(rng() % 6));
    if (!all4) {
      int x;
      do x = static_cast<int>(rng() % 30); while (x % d == r % d || s.count(x));
      s.insert(x);
    }
    std::vector<int> v(s.begin(), s.end());
    IndexSet4 J(v[0], v[1], v[2], v[3]);
    EXPECT_EQ(unity_root_multiplicity(J, d), all4 ? 4 : 1) << J.to_string() << " d=" << d;
  }
}

TEST(ExceptionalAffine, Examples) {
  auto a = is_exceptional_affine({0, 3, 4, 6});
  ASSERT_TRUE(a);
  EXPECT_EQ(a->base, IndexSet4(0, 3, 4, 6));
  EXPECT_EQ(a->scale, 1);
  EXPECT_EQ(a->shift, 0);
  auto b = is_exceptional_affine({2, 8, 10, 14});
  ASSERT_TRUE(b);
  EXPECT_EQ(b->base, IndexSet4(0, 3, 4, 6));
  EXPECT_EQ(b->scale, 2);
  EXPECT_EQ(b->shift, 2);
  EXPECT_TRUE(oracle_ref::brute_exceptional_affine({2, 8, 10, 14}));
  EXPECT_FALSE(is_exceptional_affine({0, 1, 3, 4}));
  EXPECT_TRUE(is_exceptional_translation({1, 2, 3, 5}));
  EXPECT_FALSE(is_exceptional_translation({0, 2, 4, 6}));
}

TEST(ExceptionalAffine, AgreesWithBruteForce) {
  for (int a = 0; a <= 12; ++a)
    for (int b = a + 1; b <= 12; ++b)
      for (int c = b + 1; c <= 12; ++c)
        for (int d = c + 1; d <= 12; ++d)
          EXPECT_EQ(is_exceptional_affine({a, b, c, d}).has_value(), oracle_ref::brute_exceptional_affine({a, b, c, d}));
}

TEST(ThreePowersEqual, Examples) {
  EXPECT_TRUE(all_roots_three_powers_equal({0, 1, 2, 4}));
  EXPECT_FALSE(all_roots_three_powers_equal({0, 1, 3, 4}));
  EXPECT_TRUE(all_roots_three_powers_equal({0, 6, 8, 12}));
}

TEST(ThreePowersEqual, EquivalentToExceptionalOnSmallSets) {
  int count = 0;
  for (int a = 0; a <= 12; ++a)
    for (int b = a + 1; b <= 12; ++b)
      for (int c = b + 1; c <= 12; ++c)
        for (int d = c + 1; d <= 12; ++d) {
          IndexSet4 J(a, b, c, d);
          EXPECT_EQ(all_roots_three_powers_equal(J), is_exceptional_affine(J).has_value()) << J.to_string();
          ++count;
        }
  EXPECT_EQ(count, 715);
}

TEST(PerturbedValuation, Examples) {
  EXPECT_EQ(val_DJ_perturbed({1, 3, 5, 2}, 2, q(1), q(1)), q(1));
  EXPECT_EQ(val_DJ_perturbed({0, 2, 4, 6}, 2, q(1), q(1)), q(4));
  EXPECT_EQ(val_DJ_perturbed({0, 2, 4, 6}, 2, q(1, 2), q(1)), q(2));
  EXPECT_THROW(val_DJ_perturbed({1, 2, 3, 5}, 2, q(1), q(1)), InvalidArgument);
}

TEST(PerturbedValuation, RandomAdmissibleCasesFollowDichotomy) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + static_cast<int>(rng() % 4);
    int i1 = static_cast<int>(rng() % 5);
    int a = 1 + static_cast<int>(rng() % 3), b = a + 1 + static_cast<int>(rng() % 3);
    std::array<int, 4> t{i1, i1 + a * d, i1 + b * d, 0};
    do t[3] = static_cast<int>(rng() % 25); while (t[3] == t[0] || t[3] == t[1] || t[3] == t[2]);
    Rational v = make_rational(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
    RingPtr ring = CoeffRing::cyclotomic(d);
    RingElem h = RingElem(ring, q(1 + static_cast<long>(rng() % 3))) + Rational(static_cast<long>(rng() % 2)) * RingElem::generator(ring);
    if (h.is_zero()) h = RingElem::one(ring);
    // independent prediction: D_J(beta + h t^v) = sum_k D^{(k)}(beta)/k! h^k t^{kv}
    IntPoly D = minor_poly(IndexSet4::sorted_from(t)).poly;
    RingElem beta = RingElem::generator(ring);
    int k = 0;
    IntPoly der = D;
    while (evaluate_at(der, beta).is_zero()) {
      der = der.derivative();
      ++k;
    }
    Rational predicted = v * k;
    Rational expected = ((t[3] - t[0]) % d == 0) ? Rational(4 * v) : v;
    EXPECT_EQ(predicted, expected);
    EXPECT_EQ(val_DJ_perturbed(t, d, v, h), expected);
  }
}

TEST(Diophantine, Pairs) {
  std::vector<std::pair<int, int>> five{{2, 1}, {2, 2}, {3, 1}, {3, 3}, {4, 2}};
  EXPECT_EQ(diophantine_pairs(4), five);
  EXPECT_EQ(diophantine_pairs(500), five);
  EXPECT_EQ(diophantine_pairs(2), (std::vector<std::pair<int, int>>{{2, 1}, {2, 2}}));
}

TEST(RankMJ, Examples) {
  RingPtr C2 = CoeffRing::cyclotomic(2);
  EXPECT_EQ(rank_MJ_at({0, 2, 4, 6}, RingElem::generator(C2)), 2);
  EXPECT_EQ(rank_MJ_at({0, 1, 2, 3}, RingElem(CoeffRing::rationals(), q(2))), 4);
  RingPtr quad = CoeffRing::dynamic(to_rational(ip({1, 4, 1})));
  EXPECT_EQ(rank_MJ_at({0, 1, 3, 4}, RingElem::generator(quad)), 3);
}

TEST(RankMJ, RankTwoIffAllPowersEqual) {
  for (int d = 2; d <= 6; ++d) {
    RingPtr ring = CoeffRing::cyclotomic(d);
    RingElem beta = RingElem::generator(ring);
    for (int a = 0; a <= 8; ++a)
      for (int b = a + 1; b <= 9; ++b)
        for (int c = b + 1; c <= 10; ++c)
          for (int e = c + 1; e <= 11; ++e) {
            IndexSet4 J(a, b, c, e);
            bool equal = (b - a) % d == 0 && (c - a) % d == 0 && (e - a) % d == 0;
            EXPECT_EQ(rank_MJ_at(J, beta) == 2, equal);
          }
  }
}

TEST(VanishingPattern, Examples) {
  RingPtr quad = CoeffRing::dynamic(to_rational(ip({1, 4, 1})));
  auto rep = check_appendixB_vanishing_pattern({0, 1, 3, 4, 2}, RingElem::generator(quad));
  EXPECT_TRUE(rep.vanishes[4]);
  for (int j = 0; j < 4; ++j) EXPECT_FALSE(rep.vanishes[static_cast<std::size_t>(j)]);
  EXPECT_TRUE(rep.dichotomy_applicable);
  EXPECT_TRUE(rep.dichotomy_holds);
  EXPECT_TRUE(rep.second_monomial_good);

  EXPECT_THROW(check_appendixB_vanishing_pattern({0, 1, 3, 4, 2}, RingElem(CoeffRing::rationals(), q(1))),
               InvalidArgument);

  auto rep2 = check_appendixB_vanishing_pattern({0, 2, 4, 6, 8}, RingElem::generator(CoeffRing::cyclotomic(2)));
  for (bool v : rep2.vanishes) EXPECT_TRUE(v);
  EXPECT_TRUE(rep2.dichotomy_holds);
}

TEST(TripleRoots, ForceAllPowersEqual) {
  // every cyclotomic factor of multiplicity >= 3 in D_J, J in {0..12}
  for (int a = 0; a <= 12; ++a)
    for (int b = a + 1; b <= 12; ++b)
      for (int c = b + 1; c <= 12; ++c)
        for (int e = c + 1; e <= 12; ++e) {
          IndexSet4 J(a, b, c, e);
          IntPoly D = minor_poly(J).poly;
          for (int d = 1; d <= 12; ++d) {
            int m = multiplicity_of_factor(D, cyclotomic(d));
            if (m >= 3) {
              bool equal = (b - a) % d == 0 && (c - a) % d == 0 && (e - a) % d == 0;
              EXPECT_TRUE(equal) << J.to_string() << " d=" << d;
              EXPECT_EQ(m, 4);
            }
          }
        }
}
