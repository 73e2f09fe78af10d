#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tropsev/newton.hpp"

namespace tropsev {

using LinearForm = std::vector<long long>;

inline Rational apply_form(const LinearForm& f, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0) s += Rational(static_cast<long>(f[i])) * x[i];
  return s;
}

// Closed polyhedral cone {x : E x = 0, G x >= 0}.
struct HDescription {
  int ambient = 0;
  std::vector<LinearForm> equalities;
  std::vector<LinearForm> inequalities;

  bool contains(const std::vector<Rational>& x) const {
    for (const auto& e : equalities)
      if (apply_form(e, x) != 0) return false;
    for (const auto& g : inequalities)
      if (apply_form(g, x) < 0) return false;
    return true;
  }
  // Equalities hold and every inequality is strict.
  bool contains_strictly(const std::vector<Rational>& x) const {
    for (const auto& e : equalities)
      if (apply_form(e, x) != 0) return false;
    for (const auto& g : inequalities)
      if (apply_form(g, x) <= 0) return false;
    return true;
  }
};

using RatMatrix = std::vector<std::vector<Rational>>;

inline RatMatrix to_matrix(const std::vector<LinearForm>& forms, int cols) {
  RatMatrix m;
  for (const auto& f : forms) {
    std::vector<Rational> row(static_cast<std::size_t>(cols));
    for (int i = 0; i < cols; ++i) row[static_cast<std::size_t>(i)] = Rational(static_cast<long>(f[static_cast<std::size_t>(i)]));
    m.push_back(std::move(row));
  }
  return m;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> row_reduce(RatMatrix& a, int cols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][static_cast<std::size_t>(c)] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][static_cast<std::size_t>(c)];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k == r || a[k][static_cast<std::size_t>(c)] == 0) continue;
      Rational f = a[k][static_cast<std::size_t>(c)];
      for (int j = 0; j < cols; ++j) a[k][static_cast<std::size_t>(j)] -= f * a[r][static_cast<std::size_t>(j)];
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return pivots;
}

inline int matrix_rank(RatMatrix a, int cols) { return static_cast<int>(row_reduce(a, cols).size()); }

// Basis of {x : A x = 0} as columns (returned as a list of vectors).
inline std::vector<std::vector<Rational>> nullspace_basis(RatMatrix a, int cols) {
  std::vector<int> pivots = row_reduce(a, cols);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(cols));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[static_cast<std::size_t>(pivots[r])] = -a[r][static_cast<std::size_t>(f)];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct LpResult {
  Rational value;
  std::vector<Rational> x;
};

// max c.x subject to A x <= b, x >= 0, with b >= 0 (the origin is feasible).
// Dense tableau simplex with Bland's rule; nullopt when unbounded.
inline std::optional<LpResult> simplex_max(const RatMatrix& A, const std::vector<Rational>& b,
                                           const std::vector<Rational>& c) {
  const std::size_t m = A.size();
  const std::size_t nv = c.size();
  for (const auto& bi : b)
    if (bi < 0) throw InvalidArgument("simplex_max requires a nonnegative right-hand side");
  // columns: nv structural + m slack, last column = rhs
  const std::size_t width = nv + m + 1;
  RatMatrix t(m + 1, std::vector<Rational>(width));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nv; ++j) t[i][j] = A[i][j];
    t[i][nv + i] = 1;
    t[i][width - 1] = b[i];
    basis[i] = nv + i;
  }
  for (std::size_t j = 0; j < nv; ++j) t[m][j] = -c[j];
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return std::nullopt;
    Rational inv = 1 / t[leave][enter];
    for (auto& x : t[leave]) x *= inv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  LpResult res;
  res.value = t[m][width - 1];
  res.x.assign(nv, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < nv) res.x[basis[i]] = t[i][width - 1];
  return res;
}

namespace detail {

// Parametrize {E x = 0} as x = B z and return the inequality rows G B.
struct ReducedCone {
  std::vector<std::vector<Rational>> basis;  // columns of B
  RatMatrix gb;                              // rows: g.B
};

inline ReducedCone reduce_cone(const HDescription& h) {
  ReducedCone rc;
  rc.basis = nullspace_basis(to_matrix(h.equalities, h.ambient), h.ambient);
  for (const auto& g : h.inequalities) {
    std::vector<Rational> row;
    for (const auto& col : rc.basis) row.push_back(apply_form(g, col));
    rc.gb.push_back(std::move(row));
  }
  return rc;
}

// max objective.z over {gb z >= t * 1 (if use_t), |z_i| <= 1}; z = zp - zm.
inline LpResult solve_box_lp(const ReducedCone& rc, const std::vector<Rational>& objective, bool use_t) {
  const std::size_t k = rc.basis.size();
  const std::size_t nv = 2 * k + (use_t ? 1 : 0);
  RatMatrix A;
  std::vector<Rational> b;
  for (const auto& row : rc.gb) {
    std::vector<Rational> a(nv);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = -row[i];
      a[k + i] = row[i];
    }
    if (use_t) a[2 * k] = 1;
    A.push_back(std::move(a));
    b.emplace_back(0);
  }
  for (std::size_t i = 0; i < 2 * k; ++i) {
    std::vector<Rational> a(nv);
    a[i] = 1;
    A.push_back(std::move(a));
    b.emplace_back(1);
  }
  if (use_t) {
    std::vector<Rational> a(nv);
    a[2 * k] = 1;
    A.push_back(std::move(a));
    b.emplace_back(1);
  }
  std::vector<Rational> c(nv);
  if (use_t) {
    c[2 * k] = 1;
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = objective[i];
      c[k + i] = -objective[i];
    }
  }
  auto res = simplex_max(A, b, c);
  if (!res) throw Error("bounded LP reported unbounded");
  return *res;
}

inline std::vector<Rational> lift(const ReducedCone& rc, const std::vector<Rational>& zz, int ambient) {
  const std::size_t k = rc.basis.size();
  std::vector<Rational> x(static_cast<std::size_t>(ambient));
  for (std::size_t i = 0; i < k; ++i) {
    Rational zi = zz[i] - zz[k + i];
    if (zi == 0) continue;
    for (int j = 0; j < ambient; ++j) x[static_cast<std::size_t>(j)] += zi * rc.basis[i][static_cast<std::size_t>(j)];
  }
  return x;
}

}  // namespace detail

// A point satisfying every inequality strictly, if one exists.
inline std::optional<std::vector<Rational>> strictly_feasible_point(const HDescription& h) {
  auto rc = detail::reduce_cone(h);
  if (rc.basis.empty()) return h.inequalities.empty() ? std::optional(std::vector<Rational>(static_cast<std::size_t>(h.ambient))) : std::nullopt;
  auto res = detail::solve_box_lp(rc, {}, true);
  if (res.value <= 0) return std::nullopt;
  return detail::lift(rc, res.x, h.ambient);
}

// Dimension of the cone: ambient minus the rank of its equalities together
// with the inequalities that hold with equality on the whole cone.
inline int cone_dimension(const HDescription& h) {
  auto rc = detail::reduce_cone(h);
  std::vector<LinearForm> eqs = h.equalities;
  if (!rc.basis.empty()) {
    auto strict = detail::solve_box_lp(rc, {}, true);
    if (strict.value <= 0) {
      for (std::size_t i = 0; i < h.inequalities.size(); ++i) {
        auto res = detail::solve_box_lp(rc, rc.gb[i], false);
        if (res.value == 0) eqs.push_back(h.inequalities[i]);
      }
    }
  }
  return h.ambient - matrix_rank(to_matrix(eqs, h.ambient), h.ambient);
}

}  // namespace tropsev
