#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropsev/puiseux.hpp"

namespace tropsev {

struct IndexSet4 {
  std::array<int, 4> idx{};

  IndexSet4() = default;
  IndexSet4(int a, int b, int c, int d) : idx{a, b, c, d} { validate(); }
  explicit IndexSet4(std::array<int, 4> v) : idx(v) { validate(); }
  static IndexSet4 sorted_from(std::array<int, 4> v) {
    std::sort(v.begin(), v.end());
    return IndexSet4(v);
  }

  int operator[](int k) const { return idx[static_cast<std::size_t>(k)]; }
  bool contains(int j) const { return std::find(idx.begin(), idx.end(), j) != idx.end(); }
  IndexSet4 translated(int r) const { return IndexSet4(idx[0] + r, idx[1] + r, idx[2] + r, idx[3] + r); }
  IndexSet4 scaled(int s) const { return IndexSet4(idx[0] * s, idx[1] * s, idx[2] * s, idx[3] * s); }
  friend bool operator==(const IndexSet4& a, const IndexSet4& b) { return a.idx == b.idx; }
  friend bool operator<(const IndexSet4& a, const IndexSet4& b) { return a.idx < b.idx; }
  std::string to_string() const {
    return "{" + std::to_string(idx[0]) + "," + std::to_string(idx[1]) + "," + std::to_string(idx[2]) + "," +
           std::to_string(idx[3]) + "}";
  }

 private:
  void validate() const {
    if (idx[0] < 0) throw InvalidArgument("index set entries must be nonnegative");
    for (int k = 0; k < 3; ++k)
      if (idx[static_cast<std::size_t>(k)] >= idx[static_cast<std::size_t>(k) + 1])
        throw InvalidArgument("index set must be strictly increasing");
  }
};

struct MinorPoly {
  IndexSet4 J;
  IntPoly poly;
};

namespace detail {

// x^a (x^b - 1)(x^c - 1), b, c > 0
inline IntPoly xa_binomial_product(int a, int b, int c) {
  std::vector<Integer> v(static_cast<std::size_t>(a + b + c) + 1, Integer(0));
  v[static_cast<std::size_t>(a + b + c)] += 1;
  v[static_cast<std::size_t>(a + b)] -= 1;
  v[static_cast<std::size_t>(a + c)] -= 1;
  v[static_cast<std::size_t>(a)] += 1;
  return IntPoly(std::move(v));
}

}  // namespace detail

// Determinant of the 4x4 matrix with columns (1, j, x^j, j x^j), j in J.
inline MinorPoly minor_poly(const IndexSet4& J) {
  const int s = J[0];
  const int i = J[1] - s, j = J[2] - s, k = J[3] - s;
  IntPoly d = Integer(i * k) * detail::xa_binomial_product(i, k - i, j) -
              Integer(i * j) * detail::xa_binomial_product(i, j - i, k) -
              Integer(j * k) * detail::xa_binomial_product(j, k - j, i);
  return {J, d.shifted(2 * s)};
}

// Minor of an arbitrary sorted 4-element column set given as a span.
inline IntPoly minor_of(std::span<const int> sorted4) {
  return minor_poly(IndexSet4(sorted4[0], sorted4[1], sorted4[2], sorted4[3])).poly;
}

// s_1..s_4: gcds of gaps; a root beta != 0, 1 has three equal powers
// beta^{i_j} iff beta^{s_j} = 1 for some j.
inline std::array<int, 4> gap_gcds(const IndexSet4& J) {
  return {std::gcd(J[2] - J[1], J[3] - J[1]), std::gcd(J[3] - J[0], J[2] - J[0]),
          std::gcd(J[3] - J[0], J[1] - J[0]), std::gcd(J[2] - J[0], J[1] - J[0])};
}

inline int unity_root_multiplicity(const IndexSet4& J, int d) {
  if (d < 1) throw InvalidArgument("root of unity order must be positive");
  return multiplicity_of_factor(minor_poly(J).poly, cyclotomic(d));
}

inline const std::array<IndexSet4, 5>& exceptional_configurations() {
  static const std::array<IndexSet4, 5> bases = {IndexSet4(0, 1, 2, 3), IndexSet4(0, 1, 2, 4), IndexSet4(0, 2, 3, 4),
                                                 IndexSet4(0, 3, 4, 6), IndexSet4(0, 2, 3, 6)};
  return bases;
}

struct AffineExceptional {
  IndexSet4 base;
  int scale;  // s
  int shift;  // r
};

// J = base * s + r for an exceptional base, if any.
inline std::optional<AffineExceptional> is_exceptional_affine(const IndexSet4& J) {
  for (const auto& base : exceptional_configurations()) {
    int span = J[3] - J[0];
    if (span % base[3] != 0) continue;
    int s = span / base[3];
    if (base.scaled(s).translated(J[0]) == J) return AffineExceptional{base, s, J[0]};
  }
  return std::nullopt;
}

inline bool is_exceptional_translation(const IndexSet4& J) {
  auto a = is_exceptional_affine(J);
  return a && a->scale == 1;
}

// True iff every root beta not in {0,1} of D_J has at least three of its
// powers beta^{i_j} equal.
inline bool all_roots_three_powers_equal(const IndexSet4& J) {
  IntPoly d = minor_poly(J).poly;
  RatPoly rest = to_rational(d);
  rest = divmod(rest, RatPoly::monomial(Rational(1), rest.order())).first;
  const RatPoly xm1 = to_rational(cyclotomic(1));
  while (auto q = exact_quotient(rest, xm1)) rest = std::move(*q);
  std::vector<int> orders;
  for (int s : gap_gcds(J))
    for (int e : divisors_of(s))
      if (e > 1 && std::find(orders.begin(), orders.end(), e) == orders.end()) orders.push_back(e);
  for (int e : orders) {
    const RatPoly phi = to_rational(cyclotomic(e));
    while (auto q = exact_quotient(rest, phi)) rest = std::move(*q);
  }
  return rest.is_constant();
}

// Valuation of D_J(beta + h t^v) for beta a primitive d-th root of unity.
// `tuple` lists sigma = (i1, i2, i3) first, then the extra index i4;
// d must divide gcd(i3 - i1, i2 - i1). The result is certified against the
// expected dichotomy 4v / v and a mismatch raises std::logic_error.
inline Rational val_DJ_perturbed(const std::array<int, 4>& tuple, int d, const Rational& v, const RingElem& h) {
  if (d < 2) throw InvalidArgument("root of unity order must be at least 2");
  int g = std::gcd(std::abs(tuple[2] - tuple[0]), std::abs(tuple[1] - tuple[0]));
  if (g % d != 0) throw InvalidArgument("order does not divide the gap gcd of the triple");
  if (v <= 0) throw InvalidArgument("perturbation exponent must be positive");
  if (h.is_zero()) throw InvalidArgument("perturbation coefficient must be nonzero");
  const RingPtr& ring = h.ring();
  if (ring->kind() != CoeffRing::Kind::cyclotomic || ring->order() != d)
    throw InvalidArgument("h must live in the cyclotomic ring of order d");
  IndexSet4 J = IndexSet4::sorted_from(tuple);
  RingElem beta = RingElem::generator(ring);
  PuiseuxTrunc b = PuiseuxTrunc::constant(beta) + PuiseuxTrunc::monomial(h, v);
  Rational val = eval_intpoly_at_series(minor_poly(J).poly, b).valuation();
  bool all_equal = (tuple[3] - tuple[0]) % d == 0;
  Rational expected = all_equal ? Rational(4 * v) : v;
  if (val != expected) throw std::logic_error("valuation of perturbed minor contradicts the 4v/v dichotomy");
  return val;
}

inline Rational val_DJ_perturbed(const std::array<int, 4>& tuple, int d, const Rational& v, const Rational& h) {
  return val_DJ_perturbed(tuple, d, v, RingElem(CoeffRing::cyclotomic(d), h));
}

// Pairs (n, m), 1 < n <= bound, 1 <= m <= bound, m | n and (n - 1) | (m + 1).
inline std::vector<std::pair<int, int>> diophantine_pairs(int bound) {
  std::vector<std::pair<int, int>> out;
  for (int n = 2; n <= bound; ++n)
    for (int m = 1; m <= bound; ++m)
      if (n % m == 0 && (m + 1) % (n - 1) == 0) out.emplace_back(n, m);
  return out;
}

// Rank of a matrix over a coefficient ring by Gaussian elimination.
// Pivots must be units; zero-divisors raise DynamicSplit.
inline int ring_matrix_rank(std::vector<std::vector<RingElem>> a) {
  int rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = static_cast<std::size_t>(rank); r < rows; ++r)
      if (a[r][c].nonzero_decided()) {
        pivot = r;
        break;
      }
    if (pivot == rows) continue;
    std::swap(a[pivot], a[static_cast<std::size_t>(rank)]);
    const auto& prow = a[static_cast<std::size_t>(rank)];
    RingElem inv = prow[c].inverse();
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows; ++r) {
      if (a[r][c].is_zero()) continue;
      RingElem f = a[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * prow[k];
    }
    ++rank;
  }
  return rank;
}

// Matrix M_J(beta) with rows 1, j, beta^j, j beta^j.
inline std::vector<std::vector<RingElem>> severi_matrix_at(std::span<const int> J, const RingElem& beta) {
  const RingPtr& ring = beta.ring();
  std::vector<std::vector<RingElem>> m(4);
  for (int j : J) {
    RingElem p = beta.pow(j);
    m[0].push_back(RingElem::one(ring));
    m[1].push_back(RingElem(ring, Rational(j)));
    m[2].push_back(p);
    m[3].push_back(Rational(j) * p);
  }
  return m;
}

inline int rank_MJ_at(const IndexSet4& J, const RingElem& beta) {
  if (beta.is_zero()) throw InvalidArgument("beta must be nonzero");
  return ring_matrix_rank(severi_matrix_at(J.idx, beta));
}

// Multiplicity of beta as a root of p (0 when p(beta) != 0).
inline int root_multiplicity_at(const IntPoly& p, const RingElem& beta) {
  if (p.is_zero()) throw InvalidArgument("root multiplicity in the zero polynomial");
  IntPoly q = p;
  int k = 0;
  while (!q.is_zero()) {
    RingElem val = RingElem::zero(beta.ring());
    for (int i = q.degree(); i >= 0; --i) val = val * beta + RingElem(beta.ring(), Rational(q.coeff(i)));
    if (val.nonzero_decided()) return k;
    q = q.derivative();
    ++k;
  }
  return k;
}

inline RingElem evaluate_at(const IntPoly& p, const RingElem& beta) {
  RingElem val = RingElem::zero(beta.ring());
  for (int i = p.degree(); i >= 0; --i) val = val * beta + RingElem(beta.ring(), Rational(p.coeff(i)));
  return val;
}

enum class PowerPattern { all_equal, three_equal_one_different, at_most_pairs };

// Coincidence pattern of beta^{j} over four indices. Equality of powers is
// decided through nonzero_decided, so dynamic rings may split here.
inline PowerPattern power_pattern(std::span<const int> four, const RingElem& beta) {
  std::array<RingElem, 4> p;
  for (std::size_t k = 0; k < 4; ++k) p[k] = beta.pow(four[k]);
  std::array<int, 4> cls{};
  int next = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    cls[k] = -1;
    for (std::size_t l = 0; l < k; ++l)
      if (!(p[k] - p[l]).nonzero_decided()) {
        cls[k] = cls[l];
        break;
      }
    if (cls[k] < 0) cls[k] = next++;
  }
  std::array<int, 4> counts{};
  for (int c : cls) ++counts[static_cast<std::size_t>(c)];
  int largest = *std::max_element(counts.begin(), counts.end());
  if (largest == 4) return PowerPattern::all_equal;
  if (largest == 3) return PowerPattern::three_equal_one_different;
  return PowerPattern::at_most_pairs;
}

struct VanishingReport {
  std::array<int, 5> J5{};           // as given; J5[4] plays the role of i5
  std::array<bool, 5> vanishes{};    // D_{J5 - {J5[j]}}(beta) == 0
  std::array<int, 5> multiplicity{}; // multiplicity of beta in that minor
  bool dichotomy_applicable = false;
  bool dichotomy_holds = true;
  // indices i5 candidates: true when all four minors containing J5[4] are nonzero
  bool second_monomial_good = false;
};

inline VanishingReport check_appendixB_vanishing_pattern(const std::array<int, 5>& J5, const RingElem& beta) {
  if (beta.is_zero() || beta.is_one()) throw InvalidArgument("beta must differ from 0 and 1");
  {
    std::array<int, 5> s = J5;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end() || s[0] < 0)
      throw InvalidArgument("J5 must contain five distinct nonnegative indices");
  }
  VanishingReport rep;
  rep.J5 = J5;
  for (std::size_t j = 0; j < 5; ++j) {
    std::array<int, 4> rest{};
    std::size_t k = 0;
    for (std::size_t l = 0; l < 5; ++l)
      if (l != j) rest[k++] = J5[l];
    IntPoly d = minor_poly(IndexSet4::sorted_from(rest)).poly;
    rep.multiplicity[j] = root_multiplicity_at(d, beta);
    rep.vanishes[j] = rep.multiplicity[j] > 0;
  }
  std::array<int, 4> first4{J5[0], J5[1], J5[2], J5[3]};
  rep.dichotomy_applicable =
      rep.vanishes[4] && power_pattern(first4, beta) != PowerPattern::three_equal_one_different;
  if (rep.dichotomy_applicable) {
    bool all5 = std::all_of(rep.vanishes.begin(), rep.vanishes.end(), [](bool x) { return x; });
    bool none4 = std::none_of(rep.vanishes.begin(), rep.vanishes.begin() + 4, [](bool x) { return x; });
    rep.dichotomy_holds = all5 || none4;
  }
  rep.second_monomial_good = std::none_of(rep.vanishes.begin(), rep.vanishes.begin() + 4, [](bool x) { return x; });
  return rep;
}

}  // namespace tropsev
