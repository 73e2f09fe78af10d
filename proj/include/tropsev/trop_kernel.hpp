#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tropsev/puiseux.hpp"

namespace tropsev {

// d x (n+1) matrix of series over one coefficient ring.
struct ValMatrix {
  RingPtr ring;
  std::vector<std::vector<PuiseuxTrunc>> entries;

  ValMatrix() : ring(CoeffRing::rationals()) {}
  ValMatrix(RingPtr r, std::vector<std::vector<PuiseuxTrunc>> e) : ring(std::move(r)), entries(std::move(e)) {
    for (const auto& row : entries)
      if (row.size() != entries.front().size()) throw InvalidArgument("ragged matrix");
  }

  int rows() const { return static_cast<int>(entries.size()); }
  int cols() const { return entries.empty() ? 0 : static_cast<int>(entries.front().size()); }
  const PuiseuxTrunc& at(int r, int c) const {
    return entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }

  ValMatrix without_row(int r) const {
    ValMatrix out = *this;
    out.entries.erase(out.entries.begin() + r);
    return out;
  }
  ValMatrix with_column_scaled(int c, const PuiseuxTrunc& s) const {
    ValMatrix out = *this;
    for (auto& row : out.entries) row[static_cast<std::size_t>(c)] = row[static_cast<std::size_t>(c)] * s;
    return out;
  }

  static ValMatrix from_rationals(const std::vector<std::vector<Rational>>& a) {
    RingPtr Q = CoeffRing::rationals();
    std::vector<std::vector<PuiseuxTrunc>> e;
    for (const auto& row : a) {
      std::vector<PuiseuxTrunc> r;
      for (const auto& x : row) r.push_back(x == 0 ? PuiseuxTrunc(Q) : PuiseuxTrunc::constant(Q, x));
      e.push_back(std::move(r));
    }
    return ValMatrix(Q, std::move(e));
  }
};

// Determinant of the square submatrix on the given rows and columns, by
// Laplace expansion along rows with memoization on the remaining columns.
inline PuiseuxTrunc determinant(const ValMatrix& M, const std::vector<int>& rows, const std::vector<int>& cols) {
  const std::size_t k = rows.size();
  if (cols.size() != k) throw InvalidArgument("determinant of a non-square selection");
  if (k == 0) return PuiseuxTrunc::constant(M.ring, 1);
  std::vector<std::map<unsigned, PuiseuxTrunc>> memo(k);
  std::function<PuiseuxTrunc(std::size_t, unsigned)> rec = [&](std::size_t r, unsigned mask) -> PuiseuxTrunc {
    if (r == k) return PuiseuxTrunc::constant(M.ring, 1);
    auto it = memo[r].find(mask);
    if (it != memo[r].end()) return it->second;
    PuiseuxTrunc acc(M.ring);
    int sign = 1;
    for (std::size_t c = 0; c < k; ++c) {
      if (!(mask & (1U << c))) continue;
      const PuiseuxTrunc& e = M.at(rows[r], cols[c]);
      if (!e.is_exact_zero()) {
        PuiseuxTrunc term = e * rec(r + 1, mask & ~(1U << c));
        if (sign > 0)
          acc += term;
        else
          acc -= term;
      }
      sign = -sign;
    }
    memo[r].emplace(mask, acc);
    return acc;
  };
  return rec(0, (1U << k) - 1);
}

inline PuiseuxTrunc maximal_minor(const ValMatrix& M, const std::vector<int>& cols) {
  std::vector<int> rows(static_cast<std::size_t>(M.rows()));
  for (int i = 0; i < M.rows(); ++i) rows[static_cast<std::size_t>(i)] = i;
  return determinant(M, rows, cols);
}

namespace detail {

// nullopt for a zero entry; throws PrecisionExhausted when truncation hides it.
inline std::optional<Rational> certified_valuation(const PuiseuxTrunc& p) {
  if (p.is_exact_zero()) return std::nullopt;
  if (!p.has_terms()) throw PrecisionExhausted("minor vanishes up to the working truncation");
  if (!p.leading_coefficient().nonzero_decided()) throw PrecisionExhausted("leading coefficient is not a unit");
  return p.valuation();
}

inline std::vector<std::vector<int>> subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline void require_full_rank(const ValMatrix& M) {
  if (M.rows() < 1 || M.rows() > M.cols()) throw InvalidArgument("matrix must have 1 <= d <= n+1");
  if (M.rows() > 16) throw InvalidArgument("too many rows for exact minors");
  for (const auto& S : subsets(M.cols(), M.rows()))
    if (certified_valuation(maximal_minor(M, S))) return;
  throw InvalidArgument("matrix is not of full rank");
}

struct MinAttained {
  Rational value;
  std::vector<int> at;
};

inline std::optional<MinAttained> minimum(const std::vector<std::pair<int, Rational>>& vals) {
  std::optional<MinAttained> m;
  for (const auto& [k, v] : vals) {
    if (!m || v < m->value)
      m = MinAttained{v, {k}};
    else if (v == m->value)
      m->at.push_back(k);
  }
  return m;
}

}  // namespace detail

struct TropKernelResult {
  bool member = true;
  std::vector<int> violating_J;  // (d-1)-subset whose minimum is attained once
  std::optional<int> minimizer;
};

// Columns k outside J attaining min val(det M_{J+k}) + w_k; empty when
// rank(M_J) < d-1.
inline std::vector<int> kernel_minimizers(const ValMatrix& M, const std::vector<Rational>& w,
                                          const std::vector<int>& J) {
  if (static_cast<int>(J.size()) != M.rows() - 1) throw InvalidArgument("J must have d-1 columns");
  std::vector<std::pair<int, Rational>> vals;
  for (int k = 0; k < M.cols(); ++k) {
    if (std::find(J.begin(), J.end(), k) != J.end()) continue;
    std::vector<int> cols = J;
    cols.insert(std::upper_bound(cols.begin(), cols.end(), k), k);
    if (auto v = detail::certified_valuation(maximal_minor(M, cols)))
      vals.emplace_back(k, *v + w[static_cast<std::size_t>(k)]);
  }
  if (vals.empty()) return {};
  return detail::minimum(vals)->at;
}

inline TropKernelResult in_trop_kernel(const ValMatrix& M, const std::vector<Rational>& w) {
  if (static_cast<int>(w.size()) != M.cols()) throw InvalidArgument("weight length differs from column count");
  detail::require_full_rank(M);
  for (const auto& J : detail::subsets(M.cols(), M.rows() - 1)) {
    auto at = kernel_minimizers(M, w, J);
    if (at.size() == 1) return {false, J, at.front()};
  }
  return {};
}

// Rebuilds the matrix at doubled truncation order when a minor is ambiguous.
inline TropKernelResult in_trop_kernel(const std::function<ValMatrix(const Rational&)>& build,
                                       const std::vector<Rational>& w, Rational tau) {
  for (int attempt = 0; attempt <= 3; ++attempt, tau *= 2) {
    try {
      return in_trop_kernel(build(tau), w);
    } catch (const PrecisionExhausted&) {
    } catch (const ValuationUndetermined&) {
    }
  }
  throw PrecisionExhausted("minor valuations undetermined after precision doubling");
}

struct Circuit {
  std::vector<int> support;
  std::vector<PuiseuxTrunc> vector;
};

// One circuit per (d-1)-subset J of rank d-1: r = y^T M with y the signed
// (d-1)-minors of M_J, i.e. the expansion of det[M_J | C_k] along C_k.
// Deduplicated by support.
inline std::vector<Circuit> circuits(const ValMatrix& M) {
  detail::require_full_rank(M);
  const int d = M.rows(), N = M.cols();
  std::vector<Circuit> out;
  for (const auto& J : detail::subsets(N, d - 1)) {
    std::vector<PuiseuxTrunc> y;
    bool any = false;
    for (int i = 0; i < d; ++i) {
      std::vector<int> rows;
      for (int r = 0; r < d; ++r)
        if (r != i) rows.push_back(r);
      PuiseuxTrunc m = determinant(M, rows, J);
      if ((i + d - 1) % 2) m = -m;
      if (detail::certified_valuation(m)) any = true;
      y.push_back(std::move(m));
    }
    if (!any) continue;
    Circuit c;
    for (int k = 0; k < N; ++k) {
      PuiseuxTrunc r(M.ring);
      for (int i = 0; i < d; ++i)
        if (!y[static_cast<std::size_t>(i)].is_exact_zero() && !M.at(i, k).is_exact_zero())
          r += y[static_cast<std::size_t>(i)] * M.at(i, k);
      if (std::find(J.begin(), J.end(), k) != J.end()) {
        // a column of M_J pairs to a repeated column: zero by construction
        if (r.has_terms()) throw std::logic_error("circuit does not vanish on its defining columns");
        r = PuiseuxTrunc(M.ring);
      }
      if (detail::certified_valuation(r)) c.support.push_back(k);
      c.vector.push_back(std::move(r));
    }
    if (c.support.empty()) throw std::logic_error("rank d-1 subset produced a zero circuit");
    bool seen = false;
    for (const auto& o : out) seen = seen || o.support == c.support;
    if (!seen) out.push_back(std::move(c));
  }
  for (const auto& a : out)
    for (const auto& b : out) {
      if (&a == &b || b.support.size() >= a.support.size()) continue;
      if (std::includes(a.support.begin(), a.support.end(), b.support.begin(), b.support.end()))
        throw std::logic_error("circuit support is not minimal");
    }
  return out;
}

inline bool in_trop_kernel_via_circuits(const ValMatrix& M, const std::vector<Rational>& w) {
  if (static_cast<int>(w.size()) != M.cols()) throw InvalidArgument("weight length differs from column count");
  for (const auto& c : circuits(M)) {
    std::vector<std::pair<int, Rational>> vals;
    for (int k : c.support)
      vals.emplace_back(k, c.vector[static_cast<std::size_t>(k)].valuation() + w[static_cast<std::size_t>(k)]);
    if (detail::minimum(vals)->at.size() < 2) return false;
  }
  return true;
}

// Rows (1, i, b^i, i b^i) for i = 0..n.
inline ValMatrix severi_matrix(const PuiseuxTrunc& b, int n) {
  const RingPtr& R = b.ring();
  std::vector<std::vector<PuiseuxTrunc>> e(4);
  PuiseuxTrunc p = PuiseuxTrunc::constant(R, 1);
  for (int i = 0; i <= n; ++i) {
    RingElem k(R, Rational(i));
    e[0].push_back(PuiseuxTrunc::constant(R, 1));
    e[1].push_back(i == 0 ? PuiseuxTrunc(R) : PuiseuxTrunc::constant(k));
    e[2].push_back(p);
    e[3].push_back(i == 0 ? PuiseuxTrunc(R) : p.scaled(k));
    p *= b;
  }
  return ValMatrix(R, std::move(e));
}

// The six-point configuration {(0,0),(1,0),(1,1),(0,1),(-1,0),(0,-1)}: node
// conditions at (1,1) and at (b1, b2). Columns 1..6 in the usual labelling
// are columns 0..5 here.
inline ValMatrix esterov_full_matrix(const PuiseuxTrunc& b1, const PuiseuxTrunc& b2) {
  const RingPtr& R = b1.ring();
  auto c = [&](long x) { return x == 0 ? PuiseuxTrunc(R) : PuiseuxTrunc::constant(R, Rational(x)); };
  PuiseuxTrunc z(R);
  PuiseuxTrunc b1b2 = b1 * b2, b11 = b1 * b1, b22 = b2 * b2;
  std::vector<std::vector<PuiseuxTrunc>> e{
      {c(1), c(1), c(1), c(1), c(1), c(1)},
      {z, c(1), c(1), z, c(-1), z},
      {z, z, c(1), c(1), z, c(-1)},
      {b1b2, b11 * b2, b11 * b22, b1 * b22, b2, b1},
      {z, b11, b11 * b2, z, c(-1), z},
      {z, z, b1 * b22, b22, z, c(-1)},
  };
  return ValMatrix(R, std::move(e));
}

// Row (1-based) dropped to reach rank 5 on the node locus.
inline int esterov_removed_row(const PuiseuxTrunc& b1, const PuiseuxTrunc& b2) {
  auto is_const = [](const PuiseuxTrunc& p, long v) {
    return p == PuiseuxTrunc::constant(p.ring(), Rational(v));
  };
  if (is_const(b1, -1) && (is_const(b2, 1) || is_const(b2, -1))) return 5;
  if (is_const(b1, 1) && is_const(b2, -1)) return 6;
  return 4;
}

inline ValMatrix esterov_matrix(const PuiseuxTrunc& b1, const PuiseuxTrunc& b2) {
  return esterov_full_matrix(b1, b2).without_row(esterov_removed_row(b1, b2) - 1);
}

// The same fixture on b2 = 1/b1 (b1 not +-1) with polynomial entries: row 6
// is multiplied by b1^2, so every maximal minor is b1^2 times the original.
inline ValMatrix esterov_matrix_reciprocal(const PuiseuxTrunc& b1) {
  const RingPtr& R = b1.ring();
  auto c = [&](long x) { return x == 0 ? PuiseuxTrunc(R) : PuiseuxTrunc::constant(R, Rational(x)); };
  PuiseuxTrunc z(R), b11 = b1 * b1;
  std::vector<std::vector<PuiseuxTrunc>> e{
      {c(1), c(1), c(1), c(1), c(1), c(1)},
      {z, c(1), c(1), z, c(-1), z},
      {z, z, c(1), c(1), z, c(-1)},
      {z, b11, b1, z, c(-1), z},
      {z, z, b1, c(1), z, -b11},
  };
  return ValMatrix(R, std::move(e));
}

}  // namespace tropsev
