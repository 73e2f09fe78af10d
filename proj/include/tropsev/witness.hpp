#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "tropsev/classifier.hpp"
#include "tropsev/puiseux.hpp"

namespace tropsev {

// f = sum c_i x^i with double roots 1 and b, stored in normalized
// coordinates: val(c_i) = transform.apply(w)_i.
struct Witness {
  RingPtr ring;
  PuiseuxTrunc b;
  std::vector<PuiseuxTrunc> coefficients;
  AffineTransform transform;
  ConeType type = ConeType::I;
  std::optional<ConeCertificate> certificate;
  std::array<int, 4> J{};  // columns solved by Cramer's rule
  std::optional<int> i5;   // index driving the leading terms (type II)
  Rational v;              // exponent of the perturbation in b
  int h = 1;
  int m = 1;  // multiplicity of the leading coefficient of b as a root of D_J
  Rational truncation;

  // c_i t^{-(alpha i + shift)}: valuations equal the original weight.
  std::vector<PuiseuxTrunc> original_coefficients() const {
    std::vector<PuiseuxTrunc> out;
    for (std::size_t i = 0; i < coefficients.size(); ++i)
      out.push_back(coefficients[i].shifted(-(transform.alpha * static_cast<long>(i) + transform.shift)));
    return out;
  }
  // The double roots of the original polynomial: t^alpha and t^alpha b.
  std::pair<PuiseuxTrunc, PuiseuxTrunc> original_nodes() const {
    return {PuiseuxTrunc::t_power(ring, transform.alpha), b.shifted(transform.alpha)};
  }
};

namespace detail {

inline Rational max_truncation() {
  if (const char* env = std::getenv("TROPSEV_MAX_TRUNC")) {
    try {
      Rational cap = parse_rational(env);
      if (cap > 0) return cap;
    } catch (const InvalidArgument&) {
    }
  }
  return Rational(100000);
}

inline Rational max_entry(const WeightVector& w) {
  Rational m = w[0];
  for (const auto& x : w.entries()) m = std::max(m, x);
  return m;
}

// Sign of the column permutation sorting J with J[j] replaced by i.
inline int cramer_sign(const std::array<int, 4>& J, std::size_t j, int i) {
  int inv = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (k < j && J[k] > i) ++inv;
    if (k > j && J[k] < i) ++inv;
  }
  return inv % 2 ? -1 : 1;
}

inline PuiseuxTrunc minor_at(std::array<int, 4> K, const PuiseuxTrunc& b) {
  std::sort(K.begin(), K.end());
  return eval_intpoly_at_series(minor_of(K), b);
}

// Coefficients c_i = t^{w_i} off J; c_J solves M_J(b) c_J = -sum_{i not in J} col_i(b) t^{w_i}.
inline std::vector<PuiseuxTrunc> cramer_solve(const RingPtr& ring, const WeightVector& wn, const std::array<int, 4>& J,
                                              const PuiseuxTrunc& b, const Rational& tau) {
  const int n = wn.n();
  PuiseuxTrunc D = minor_at(J, b);
  if (D.is_exact_zero()) throw NonGenericWeight("D_J vanishes at the chosen node");
  std::vector<PuiseuxTrunc> c(static_cast<std::size_t>(n) + 1, PuiseuxTrunc(ring));
  std::vector<bool> in_J(static_cast<std::size_t>(n) + 1, false);
  for (int j : J) in_J[static_cast<std::size_t>(j)] = true;
  for (int i = 0; i <= n; ++i)
    if (!in_J[static_cast<std::size_t>(i)]) c[static_cast<std::size_t>(i)] = PuiseuxTrunc::t_power(ring, wn[i]);
  for (std::size_t j = 0; j < 4; ++j) {
    PuiseuxTrunc num(ring);
    for (int i = 0; i <= n; ++i) {
      if (in_J[static_cast<std::size_t>(i)]) continue;
      std::array<int, 4> K = J;
      K[j] = i;
      PuiseuxTrunc term = minor_at(K, b) * c[static_cast<std::size_t>(i)];
      if (cramer_sign(J, j, i) < 0)
        num -= term;
      else
        num += term;
    }
    c[static_cast<std::size_t>(J[j])] = -puiseux_div(num, D, tau);
  }
  return c;
}

// Throws ValuationUndetermined when the truncation hides a coefficient and
// NonGenericWeight when a certified valuation disagrees with the target.
inline void require_valuations(const std::vector<PuiseuxTrunc>& c, const WeightVector& wn) {
  for (int i = 0; i <= wn.n(); ++i) {
    const auto& ci = c[static_cast<std::size_t>(i)];
    Rational v = ci.valuation();
    if (v != wn[i])
      throw NonGenericWeight("solved coefficient " + std::to_string(i) + " has valuation " + v.get_str() +
                             " instead of " + wn[i].get_str());
    if (!ci.leading_coefficient().nonzero_decided()) throw NonGenericWeight("zero leading coefficient");
  }
}

template <class Build>
Witness with_precision(const Rational& tau0, const Rational& floor, Build build) {
  const Rational cap = max_truncation();
  Rational tau = std::min(std::max(tau0, floor), cap);
  for (int attempt = 0; attempt <= 3; ++attempt) {
    try {
      return build(tau);
    } catch (const ValuationUndetermined&) {
    }
    if (tau >= cap) break;
    tau = std::min(Rational(2 * tau), cap);
  }
  throw PrecisionExhausted("valuations undetermined at truncation order " + tau.get_str());
}

inline const Cell& hull_cell_with_support(const MarkedSubdivision& pi, const std::vector<int>& support) {
  for (const auto& c : pi.cells)
    if (c.support == support) return c;
  throw NonGenericWeight("weight is not interior to the certificate's cone");
}

inline std::optional<int> unique_minimizer(const WeightVector& w, const std::vector<int>& idx) {
  if (idx.empty()) return std::nullopt;
  int best = idx[0];
  bool unique = true;
  for (std::size_t k = 1; k < idx.size(); ++k) {
    if (w[idx[k]] < w[best]) {
      best = idx[k];
      unique = true;
    } else if (w[idx[k]] == w[best]) {
      unique = false;
    }
  }
  if (!unique) throw NonGenericWeight("minimum over the selection set is attained more than once");
  return best;
}

inline PuiseuxTrunc perturbed_node(const RingElem& beta, int h, const Rational& v) {
  return PuiseuxTrunc::constant(beta) + PuiseuxTrunc::monomial(RingElem(beta.ring(), Rational(h)), v);
}

}  // namespace detail

inline Witness witness_type_I(const WeightVector& w, const TypeIData& cert, const Rational& min_trunc = 0) {
  const MarkedSubdivision hull = newton_diagram(w);
  const std::vector<int> A(cert.left.begin(), cert.left.end()), B(cert.right.begin(), cert.right.end());
  if (hull.marked_cells().size() != 2) throw NonGenericWeight("weight is not interior to the type I cone");
  detail::hull_cell_with_support(hull, A);
  const Cell& cellB = detail::hull_cell_with_support(hull, B);
  auto [wn, T] = normalize(w, cellB);
  const Cell cellA = make_cell(wn, A);
  const Rational v = -cellA.slope;
  if (v <= 0) throw InvalidArgument("type I cells out of order");
  RingPtr Q = CoeffRing::rationals();
  std::array<int, 4> J{A[0], A[1], B[1], B[2]};
  PuiseuxTrunc b = PuiseuxTrunc::t_power(Q, v);
  return detail::with_precision(4 * detail::max_entry(wn) + 1, min_trunc, [&](const Rational& tau) {
    Witness out;
    out.ring = Q;
    out.b = b;
    out.coefficients = detail::cramer_solve(Q, wn, J, b, tau);
    detail::require_valuations(out.coefficients, wn);
    out.transform = T;
    out.type = ConeType::I;
    out.J = J;
    out.v = v;
    out.truncation = tau;
    return out;
  });
}

namespace detail {

inline Witness type_II_exceptional(const WeightVector& wn, const AffineTransform& T, const IndexSet4& J, int s,
                                   const Rational& min_trunc) {
  const int n = wn.n();
  std::vector<int> sel;
  for (int i = 0; i <= n; ++i)
    if (!J.contains(i) && (i - J[0]) % s != 0) sel.push_back(i);
  auto i5 = unique_minimizer(wn, sel);
  if (!i5) throw NonGenericWeight("no index off the cell is incongruent to it");
  RingPtr R = CoeffRing::cyclotomic(s);
  const RingElem beta = RingElem::generator(R);
  const Rational v = wn[*i5] / 3;
  for (int h = 1; h <= 10; ++h) {
    PuiseuxTrunc b = perturbed_node(beta, h, v);
    PuiseuxTrunc D = minor_at(J.idx, b);
    if (D.is_exact_zero() || D.valuation() != 4 * v || !D.leading_coefficient().nonzero_decided()) continue;
    Rational tau0 = 4 * max_entry(wn) + 4 * wn[*i5] + 1;
    return with_precision(tau0, min_trunc, [&](const Rational& tau) {
      Witness out;
      out.ring = R;
      out.b = b;
      out.coefficients = cramer_solve(R, wn, J.idx, b, tau);
      require_valuations(out.coefficients, wn);
      out.transform = T;
      out.type = ConeType::II;
      out.J = J.idx;
      out.i5 = *i5;
      out.v = v;
      out.h = h;
      out.m = 1;
      out.truncation = tau;
      return out;
    });
  }
  throw PrecisionExhausted("no perturbation h <= 10 keeps the leading term of D_J");
}

struct Branch {
  RatPoly modulus;
  int multiplicity;
};

inline Witness type_II_general(const WeightVector& wn, const AffineTransform& T, const IndexSet4& J,
                               const Rational& min_trunc) {
  const int n = wn.n();
  const IntPoly DJ = minor_poly(J).poly;
  std::vector<Branch> queue;
  for (const auto& f : squarefree_decomposition(to_rational(DJ))) {
    RatPoly p = f.factor;
    if (p.coeff(0) == 0) p = divmod(p, RatPoly::x()).first;
    if (!p.is_zero() && p(Rational(1)) == 0) p = divmod(p, RatPoly::x() - RatPoly::constant(1)).first;
    if (p.degree() >= 1) queue.push_back({monic(p), f.multiplicity});
  }
  auto by_degree = [](const Branch& a, const Branch& b) { return a.modulus.degree() < b.modulus.degree(); };
  while (!queue.empty()) {
    std::stable_sort(queue.begin(), queue.end(), by_degree);
    Branch br = queue.front();
    queue.erase(queue.begin());
    try {
      RingPtr R = CoeffRing::dynamic(br.modulus);
      const RingElem beta = RingElem::generator(R);
      if (power_pattern(J.idx, beta) != PowerPattern::at_most_pairs) continue;
      if (evaluate_at(DJ, beta).nonzero_decided()) throw std::logic_error("branch root does not annihilate D_J");
      const int m = br.multiplicity;
      if (root_multiplicity_at(DJ, beta) != m || m > 2) throw std::logic_error("unexpected root multiplicity in D_J");
      std::vector<int> S;
      for (int i = 0; i <= n; ++i) {
        if (J.contains(i)) continue;
        std::array<int, 4> K{i, J[1], J[2], J[3]};
        std::sort(K.begin(), K.end());
        if (evaluate_at(minor_of(K), beta).nonzero_decided()) S.push_back(i);
      }
      if (S.empty()) throw std::logic_error("selection set for the second monomial is empty");
      auto i5 = unique_minimizer(wn, S);
      const Rational v = wn[*i5] / m;
      for (int h = 1; h <= 10; ++h) {
        PuiseuxTrunc b = perturbed_node(beta, h, v);
        PuiseuxTrunc D = minor_at(J.idx, b);
        if (D.is_exact_zero() || D.valuation() != wn[*i5] || !D.leading_coefficient().nonzero_decided()) continue;
        Rational tau0 = 4 * max_entry(wn) + 4 * wn[*i5] + 1;
        return with_precision(tau0, min_trunc, [&](const Rational& tau) {
          Witness out;
          out.ring = R;
          out.b = b;
          out.coefficients = cramer_solve(R, wn, J.idx, b, tau);
          require_valuations(out.coefficients, wn);
          out.transform = T;
          out.type = ConeType::II;
          out.J = J.idx;
          out.i5 = *i5;
          out.v = v;
          out.h = h;
          out.m = m;
          out.truncation = tau;
          return out;
        });
      }
      throw PrecisionExhausted("no perturbation h <= 10 keeps the leading term of D_J");
    } catch (const DynamicSplit& split) {
      queue.push_back({split.first, br.multiplicity});
      queue.push_back({split.second, br.multiplicity});
    }
  }
  throw Error("no root of D_J has powers repeated at most once");
}

}  // namespace detail

inline Witness witness_type_II(const WeightVector& w, const TypeIIData& cert, const Rational& min_trunc = 0) {
  const IndexSet4& J = cert.cell;
  const MarkedSubdivision hull = newton_diagram(w);
  if (hull.marked_cells().size() != 1) throw NonGenericWeight("weight is not interior to the type II cone");
  const Cell& cell = detail::hull_cell_with_support(hull, std::vector<int>(J.idx.begin(), J.idx.end()));
  auto [wn, T] = normalize(w, cell);
  auto aff = is_exceptional_affine(J);
  if (aff && aff->scale == 1) throw ExceptionalTranslation("cell is a translate of an exceptional configuration");
  if (aff) return detail::type_II_exceptional(wn, T, J, aff->scale, min_trunc);
  return detail::type_II_general(wn, T, J, min_trunc);
}

inline Witness witness_type_III(const WeightVector& w, const TypeIIIData& cert, const Rational& min_trunc = 0) {
  const int n = w.n();
  const MarkedSubdivision hull = newton_diagram(w);
  const std::vector<int> sigma(cert.sigma.begin(), cert.sigma.end());
  if (hull.marked_cells().size() != 1) throw NonGenericWeight("weight is not interior to the type III cone");
  const Cell& cell = detail::hull_cell_with_support(hull, sigma);
  auto [wn, T] = normalize(w, cell);
  const int i1 = cert.sigma[0], d = cert.d;
  const int i4 = cert.tie[0];
  const Rational tie = wn[i4];
  for (int j : detail::non_congruent(n, i1, d)) {
    bool is_tie = j == cert.tie[0] || j == cert.tie[1];
    if (is_tie ? wn[j] != tie : wn[j] <= tie) throw NonGenericWeight("hidden tie is not a strict double minimum");
  }
  std::vector<int> S;
  for (int s = 0; s <= n; ++s)
    if ((s - i1) % d == 0 && wn[s] > 0 && wn[s] <= tie) S.push_back(s);
  detail::unique_minimizer(wn, S);
  RingPtr R = CoeffRing::cyclotomic(d);
  const RingElem beta = RingElem::generator(R);
  PuiseuxTrunc b = detail::perturbed_node(beta, 1, tie);
  std::array<int, 4> J{cert.sigma[0], cert.sigma[1], cert.sigma[2], i4};
  std::sort(J.begin(), J.end());
  return detail::with_precision(4 * detail::max_entry(wn) + 4 * tie + 1, min_trunc, [&](const Rational& tau) {
    Witness out;
    out.ring = R;
    out.b = b;
    out.coefficients = detail::cramer_solve(R, wn, J, b, tau);
    detail::require_valuations(out.coefficients, wn);
    out.transform = T;
    out.type = ConeType::III;
    out.J = J;
    out.i5 = cert.tie[1];
    out.v = tie;
    out.truncation = tau;
    return out;
  });
}

// min_trunc raises the working truncation order above the automatic choice.
inline Witness construct_witness(const WeightVector& w, const ConeCertificate& cert, const Rational& min_trunc = 0) {
  Witness out = std::visit(
      [&](const auto& data) -> Witness {
        using T = std::decay_t<decltype(data)>;
        if constexpr (std::is_same_v<T, TypeIData>) return witness_type_I(w, data, min_trunc);
        if constexpr (std::is_same_v<T, TypeIIData>) return witness_type_II(w, data, min_trunc);
        if constexpr (std::is_same_v<T, TypeIIIData>) return witness_type_III(w, data, min_trunc);
      },
      cert.data);
  out.certificate = cert;
  return out;
}

// Tries the interior certificates of w in order.
inline Witness construct_witness(const WeightVector& w, const Rational& min_trunc = 0) {
  ClassificationResult r = classify(w);
  if (!r.member) throw InvalidArgument("weight is not a member: " + r.refusal_reason.value_or(""));
  std::string last = "weight lies on a cone boundary";
  for (const auto& cert : r.certificates) {
    if (!cert.interior) continue;
    try {
      return construct_witness(w, cert, min_trunc);
    } catch (const NonGenericWeight& e) {
      last = e.what();
    }
  }
  throw NonGenericWeight(last);
}

enum class Strictness { valuations_only, full };

struct VerificationReport {
  bool coefficient_count = true;
  bool valuations = true;
  bool node_distinct = true;
  bool f_at_1 = true;
  bool df_at_1 = true;
  bool f_at_b = true;
  bool df_at_b = true;
  bool diagram = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

inline VerificationReport verify_witness(const WeightVector& w, const Witness& wit,
                                         Strictness strictness = Strictness::full) {
  VerificationReport rep;
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    rep.failures.push_back(what);
  };
  try {
    if (wit.coefficients.size() != w.entries().size()) {
      fail(rep.coefficient_count, "coefficient count differs from n+1");
      return rep;
    }
    const WeightVector wn = wit.transform.apply(w);
    std::vector<Rational> vals;
    for (int i = 0; i <= wn.n(); ++i) {
      const auto& c = wit.coefficients[static_cast<std::size_t>(i)];
      try {
        if (!c.has_terms()) {
          fail(rep.valuations, "coefficient " + std::to_string(i) + " has no certified leading term");
          continue;
        }
        if (c.valuation() != wn[i])
          fail(rep.valuations, "coefficient " + std::to_string(i) + " has valuation " + c.valuation().get_str());
        else if (!c.leading_coefficient().nonzero_decided())
          fail(rep.valuations, "coefficient " + std::to_string(i) + " has a zero leading coefficient");
        vals.push_back(c.valuation());
      } catch (const std::exception& e) {
        fail(rep.valuations, "coefficient " + std::to_string(i) + ": " + e.what());
      }
    }
    PuiseuxTrunc bm1 = wit.b - PuiseuxTrunc::constant(wit.ring, 1);
    if (!bm1.has_terms()) fail(rep.node_distinct, "second node is not distinguishable from 1");
    if (strictness == Strictness::valuations_only) return rep;

    PuiseuxTrunc f1(wit.ring), df1(wit.ring), fb(wit.ring), dfb(wit.ring);
    PuiseuxTrunc bp = PuiseuxTrunc::constant(wit.ring, 1);
    for (std::size_t i = 0; i < wit.coefficients.size(); ++i) {
      const auto& c = wit.coefficients[i];
      const Rational k(static_cast<long>(i));
      f1 += c;
      df1 += c.scaled(RingElem(wit.ring, k));
      PuiseuxTrunc term = c * bp;
      fb += term;
      dfb += term.scaled(RingElem(wit.ring, k));
      bp *= wit.b;
    }
    if (f1.has_terms()) fail(rep.f_at_1, "f(1) = " + f1.to_string());
    if (df1.has_terms()) fail(rep.df_at_1, "f'(1) = " + df1.to_string());
    if (fb.has_terms()) fail(rep.f_at_b, "f(b) = " + fb.to_string());
    if (dfb.has_terms()) fail(rep.df_at_b, "b f'(b) = " + dfb.to_string());

    if (vals.size() == wit.coefficients.size()) {
      auto pi = newton_diagram(WeightVector(vals));
      if (wit.certificate && pi.supports() != wit.certificate->subdivision)
        fail(rep.diagram, "Newton diagram of the coefficients differs from the certificate subdivision");
    } else {
      fail(rep.diagram, "Newton diagram unavailable");
    }
  } catch (const std::exception& e) {
    rep.failures.push_back(std::string("verification aborted: ") + e.what());
  }
  return rep;
}

// Random weights strictly inside a cone of the given type, for tests and
// acceptance runs. Generated in coordinates where the marked cell (the right
// one for type I) is horizontal at height 0, then moved by a random affine map.
struct InteriorSample {
  WeightVector w;
  ConeCertificate certificate;
};

namespace detail {

template <class Rng>
Rational pick(Rng& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> d(lo, hi);
  return make_rational(d(rng), den);
}

// Hull heights at every index for breakpoints bp and horizontal cell z,
// slopes increasing by random steps of 1/2 or 1.
template <class Rng>
std::vector<Rational> hull_heights(int n, const std::vector<int>& bp, std::size_t z, Rng& rng) {
  std::vector<Rational> slope(bp.size() - 1);
  for (std::size_t k = z + 1; k < slope.size(); ++k) slope[k] = slope[k - 1] + pick(rng, 1, 2, 2);
  for (std::size_t k = z; k-- > 0;) slope[k] = slope[k + 1] - pick(rng, 1, 2, 2);
  std::vector<Rational> h(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = z + 1; k < bp.size(); ++k) {
    for (int j = bp[k - 1] + 1; j <= bp[k]; ++j) h[static_cast<std::size_t>(j)] = h[static_cast<std::size_t>(bp[k - 1])] + slope[k - 1] * (j - bp[k - 1]);
  }
  for (std::size_t k = z + 1; k-- > 1;) {
    for (int j = bp[k - 1]; j < bp[k]; ++j) h[static_cast<std::size_t>(j)] = h[static_cast<std::size_t>(bp[k])] - slope[k - 1] * (bp[k] - j);
  }
  return h;
}

template <class Rng>
std::vector<int> random_breakpoints(int n, const std::vector<std::pair<int, int>>& cells, Rng& rng) {
  std::vector<int> bp{0, n};
  for (auto [l, r] : cells) {
    bp.push_back(l);
    bp.push_back(r);
  }
  std::bernoulli_distribution coin(0.5);
  for (int j = 1; j < n; ++j) {
    bool inside = false;
    for (auto [l, r] : cells) inside = inside || (l < j && j < r);
    if (!inside && coin(rng)) bp.push_back(j);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

inline bool distinct_except(const std::vector<Rational>& w, const std::vector<int>& skip) {
  std::vector<Rational> vals;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (std::find(skip.begin(), skip.end(), static_cast<int>(i)) == skip.end()) vals.push_back(w[i]);
  std::sort(vals.begin(), vals.end());
  return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
}

template <class Rng>
std::optional<std::vector<Rational>> draw_normalized(ConeType type, int n, Rng& rng) {
  std::uniform_int_distribution<int> idx(0, n);
  std::vector<Rational> w(static_cast<std::size_t>(n) + 1);
  auto offset = [&] { return pick(rng, 1, 12, 2); };
  auto inside = [](int l, int r, int j) { return l < j && j < r; };
  if (type == ConeType::I) {
    std::array<int, 4> e{idx(rng), idx(rng), idx(rng), idx(rng)};
    std::sort(e.begin(), e.end());
    if (e[1] - e[0] < 2 || e[3] - e[2] < 2) return std::nullopt;
    std::uniform_int_distribution<int> m1(e[0] + 1, e[1] - 1), m2(e[2] + 1, e[3] - 1);
    int a = m1(rng), b = m2(rng);
    auto bp = random_breakpoints(n, {{e[0], e[1]}, {e[2], e[3]}}, rng);
    std::size_t z = static_cast<std::size_t>(std::find(bp.begin(), bp.end(), e[2]) - bp.begin());
    w = hull_heights(n, bp, z, rng);
    for (std::size_t k = 0; k + 1 < bp.size(); ++k)
      for (int j = bp[k] + 1; j < bp[k + 1]; ++j)
        if (j != a && j != b) w[static_cast<std::size_t>(j)] += offset();
    return w;
  }
  if (type == ConeType::II) {
    std::array<int, 4> e{idx(rng), idx(rng), idx(rng), idx(rng)};
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) return std::nullopt;
    if (is_exceptional_translation(IndexSet4(e))) return std::nullopt;
    auto bp = random_breakpoints(n, {{e[0], e[3]}}, rng);
    std::size_t z = static_cast<std::size_t>(std::find(bp.begin(), bp.end(), e[0]) - bp.begin());
    w = hull_heights(n, bp, z, rng);
    for (std::size_t k = 0; k + 1 < bp.size(); ++k)
      for (int j = bp[k] + 1; j < bp[k + 1]; ++j)
        if (j != e[1] && j != e[2]) w[static_cast<std::size_t>(j)] += offset();
    if (!distinct_except(w, {e[0], e[1], e[2], e[3]})) return std::nullopt;
    return w;
  }
  // type III: vertices 0, i1, i3, n; ties at height T
  int i1 = idx(rng), i3 = idx(rng);
  if (i3 - i1 < 4) return std::nullopt;
  std::uniform_int_distribution<int> mid(i1 + 2, i3 - 2);
  int i2 = mid(rng);
  int g = std::gcd(i3 - i1, i2 - i1);
  if (g < 2) return std::nullopt;
  auto divs = divisors_of(g);
  divs.erase(divs.begin());
  int d = divs[std::uniform_int_distribution<std::size_t>(0, divs.size() - 1)(rng)];
  auto N = non_congruent(n, i1, d);
  std::uniform_int_distribution<std::size_t> pickN(0, N.size() - 1);
  int j1 = N[pickN(rng)], j2 = N[pickN(rng)];
  if (j1 == j2) return std::nullopt;
  const Rational T = pick(rng, 1, 4, 2);
  auto side_slope = [&](int len, bool left) -> Rational {
    if (len == 0) return 0;
    int vertex = left ? 0 : n;
    if (j1 == vertex || j2 == vertex) return T / len;
    int D = 0;
    for (int j : {j1, j2}) {
      if (left && j < i1) D = std::max(D, i1 - j);
      if (!left && j > i3) D = std::max(D, j - i3);
    }
    return 2 * T / (D + len);
  };
  const Rational sl = side_slope(i1, true), sr = side_slope(n - i3, false);
  for (int j = 0; j <= n; ++j) {
    Rational hull = j < i1 ? sl * (i1 - j) : (j > i3 ? sr * (j - i3) : Rational(0));
    bool vertex = j == 0 || j == n || j == i1 || j == i3;
    bool inN = ((j - i1) % d + d) % d != 0;
    Rational& x = w[static_cast<std::size_t>(j)];
    if (j == j1 || j == j2)
      x = T;
    else if (j == i2 || (vertex && !inside(i1, i3, j)))
      x = hull;
    else if (inN)
      x = std::max(hull, T) + offset();
    else
      x = hull + offset();
  }
  std::vector<int> skip{i1, i2, i3, j1, j2};
  if (!distinct_except(w, skip)) return std::nullopt;
  for (int j : {0, n})
    if (j != j1 && j != j2 && w[static_cast<std::size_t>(j)] == T) return std::nullopt;
  return w;
}

}  // namespace detail

template <class Rng>
InteriorSample random_interior_point(ConeType type, int n, Rng& rng) {
  if (n < 4) throw InvalidArgument("interior samples need n >= 4");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    auto wn = detail::draw_normalized(type, n, rng);
    if (!wn) continue;
    AffineTransform move{detail::pick(rng, -4, 4, 2), detail::pick(rng, -6, 6, 2)};
    WeightVector w = move.apply(WeightVector(*wn));
    ClassificationResult r = classify(w);
    for (const auto& c : r.certificates)
      if (c.interior && c.type() == type) return {w, c};
    throw std::logic_error("generated weight is not interior to a cone of the requested type: " + w.to_string());
  }
  throw Error("no interior sample found");
}

}  // namespace tropsev
