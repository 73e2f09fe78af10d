#pragma once

#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tropsev/minors.hpp"
#include "tropsev/polyhedral.hpp"

namespace tropsev {

enum class ConeType { I, II, III };

inline std::string to_string(ConeType t) {
  switch (t) {
    case ConeType::I:
      return "I";
    case ConeType::II:
      return "II";
    case ConeType::III:
      return "III";
  }
  return "?";
}

// Two marked cells with one mark each; `left` lies weakly to the left of `right`.
struct TypeIData {
  std::array<int, 3> left;
  std::array<int, 3> right;
  friend bool operator==(const TypeIData&, const TypeIData&) = default;
};

// One marked cell with two marks, not a translate of an exceptional set.
struct TypeIIData {
  IndexSet4 cell;
  std::optional<AffineExceptional> affine;  // set for scaled exceptional images (scale > 1)
  friend bool operator==(const TypeIIData& a, const TypeIIData& b) { return a.cell == b.cell; }
};

// One marked cell sigma with gap gcd g, an order d | g, and a hidden tie.
struct TypeIIIData {
  std::array<int, 3> sigma;
  int g;
  int d;
  std::array<int, 2> tie;
  friend bool operator==(const TypeIIIData&, const TypeIIIData&) = default;
};

using Subdivision = std::vector<std::vector<int>>;

struct ConeCertificate {
  using ConeData = std::variant<TypeIData, TypeIIData, TypeIIIData>;
  ConeData data;
  Subdivision subdivision;
  bool interior = false;

  ConeType type() const { return static_cast<ConeType>(data.index()); }
  friend bool operator==(const ConeCertificate& a, const ConeCertificate& b) {
    return a.data == b.data && a.subdivision == b.subdivision;
  }

  std::string describe() const {
    std::string s = "type " + to_string(type());
    auto triple = [](const std::array<int, 3>& t) {
      return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
    };
    if (auto* a = std::get_if<TypeIData>(&data)) s += " cells " + triple(a->left) + " " + triple(a->right);
    if (auto* b = std::get_if<TypeIIData>(&data)) s += " cell " + b->cell.to_string();
    if (auto* c = std::get_if<TypeIIIData>(&data))
      s += " sigma " + triple(c->sigma) + " d=" + std::to_string(c->d) + " tie {" + std::to_string(c->tie[0]) + "," +
           std::to_string(c->tie[1]) + "}";
    return s;
  }
};

struct ClassificationResult {
  bool member = false;
  std::vector<ConeCertificate> certificates;
  std::optional<std::string> refusal_reason;
};

namespace detail {

// Cells between consecutive breakpoints; a cell whose endpoints match one of
// `marked` takes that support instead of its two endpoints.
inline Subdivision build_subdivision(std::vector<int> breakpoints, const std::vector<std::vector<int>>& marked) {
  for (const auto& c : marked) {
    breakpoints.push_back(c.front());
    breakpoints.push_back(c.back());
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  Subdivision out;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    std::vector<int> cell{breakpoints[k], breakpoints[k + 1]};
    for (const auto& c : marked)
      if (c.front() == cell[0] && c.back() == cell[1]) cell = c;
    out.push_back(std::move(cell));
  }
  return out;
}

inline std::vector<int> breakpoints_of(const Subdivision& pi) {
  std::vector<int> v;
  for (const auto& c : pi) v.push_back(c.front());
  if (!pi.empty()) v.push_back(pi.back().back());
  return v;
}

// Indices j with d not dividing j - i1.
inline std::vector<int> non_congruent(int n, int i1, int d) {
  std::vector<int> out;
  for (int j = 0; j <= n; ++j)
    if (((j - i1) % d + d) % d != 0) out.push_back(j);
  return out;
}

// (i3 - i1) w_j - (i3 - j) w_{i1} - (j - i1) w_{i3}
inline LinearForm hidden_height_form(int n, const std::array<int, 3>& sigma, int j) {
  LinearForm f(static_cast<std::size_t>(n) + 1, 0);
  f[static_cast<std::size_t>(j)] += sigma[2] - sigma[0];
  f[static_cast<std::size_t>(sigma[0])] -= sigma[2] - j;
  f[static_cast<std::size_t>(sigma[2])] -= j - sigma[0];
  return f;
}

inline Rational hidden_height(const WeightVector& w, const std::array<int, 3>& sigma, int j) {
  return Rational(sigma[2] - sigma[0]) * w[j] - Rational(sigma[2] - j) * w[sigma[0]] -
         Rational(j - sigma[0]) * w[sigma[2]];
}

}  // namespace detail

// Whether the open cone of a type-III datum with subdivision `pi` is nonempty.
// In normalized coordinates the hull rises strictly away from sigma on both
// sides, so the tie is impossible exactly when a tie value is forced above
// the value at a vertex that must stay strictly larger.
inline bool hidden_tie_feasible(const Subdivision& pi, const TypeIIIData& t) {
  const std::vector<int> bp = detail::breakpoints_of(pi);
  const int i1 = t.sigma[0], i3 = t.sigma[2];
  auto side = [&](int j) { return j < i1 ? -1 : (j > i3 ? 1 : 0); };
  auto dist = [&](int j) { return j < i1 ? i1 - j : j - i3; };
  auto is_vertex = [&](int j) { return std::binary_search(bp.begin(), bp.end(), j); };
  auto in_N = [&](int j) { return ((j - i1) % t.d + t.d) % t.d != 0; };
  const int j1 = t.tie[0], j2 = t.tie[1];
  if (side(j1) != 0 && side(j1) == side(j2)) {
    bool v1 = is_vertex(j1), v2 = is_vertex(j2);
    if (v1 && v2) return false;
    int near = dist(j1) < dist(j2) ? j1 : j2;
    int far = near == j1 ? j2 : j1;
    if (is_vertex(near) && !is_vertex(far)) return false;
  }
  for (int a : {j1, j2}) {
    if (side(a) == 0) continue;
    for (int k : bp) {
      if (k == j1 || k == j2 || !in_N(k) || side(k) != side(a)) continue;
      if (dist(k) < dist(a)) return false;
    }
  }
  return true;
}

inline HDescription h_description(const ConeCertificate& cert, int n) {
  HDescription h;
  h.ambient = n + 1;
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  const Subdivision& pi = cert.subdivision;
  for (const auto& cell : pi) {
    const int l = cell.front(), r = cell.back();
    for (int j = l + 1; j < r; ++j) {
      LinearForm f(dim, 0);
      f[static_cast<std::size_t>(j)] += r - l;
      f[static_cast<std::size_t>(l)] -= r - j;
      f[static_cast<std::size_t>(r)] -= j - l;
      if (std::find(cell.begin(), cell.end(), j) != cell.end())
        h.equalities.push_back(std::move(f));
      else
        h.inequalities.push_back(std::move(f));
    }
  }
  const std::vector<int> bp = detail::breakpoints_of(pi);
  for (std::size_t k = 1; k + 1 < bp.size(); ++k) {
    const int u = bp[k - 1], v = bp[k], x = bp[k + 1];
    // (v-u)(w_x - w_v) - (x-v)(w_v - w_u) >= 0
    LinearForm f(dim, 0);
    f[static_cast<std::size_t>(x)] += v - u;
    f[static_cast<std::size_t>(v)] -= (v - u) + (x - v);
    f[static_cast<std::size_t>(u)] += x - v;
    h.inequalities.push_back(std::move(f));
  }
  if (auto* t = std::get_if<TypeIIIData>(&cert.data)) {
    LinearForm a = detail::hidden_height_form(n, t->sigma, t->tie[0]);
    LinearForm b = detail::hidden_height_form(n, t->sigma, t->tie[1]);
    LinearForm e(dim);
    for (std::size_t i = 0; i < dim; ++i) e[i] = a[i] - b[i];
    h.equalities.push_back(std::move(e));
    for (int j : detail::non_congruent(n, t->sigma[0], t->d)) {
      if (j == t->tie[0] || j == t->tie[1]) continue;
      LinearForm c = detail::hidden_height_form(n, t->sigma, j);
      for (std::size_t i = 0; i < dim; ++i) c[i] -= a[i];
      h.inequalities.push_back(std::move(c));
    }
  }
  return h;
}

inline int dimension_check(const ConeCertificate& cert, int n) { return cone_dimension(h_description(cert, n)); }

inline ConeCertificate reversed(const ConeCertificate& cert, int n) {
  ConeCertificate out;
  auto flip3 = [n](const std::array<int, 3>& t) { return std::array<int, 3>{n - t[2], n - t[1], n - t[0]}; };
  if (auto* a = std::get_if<TypeIData>(&cert.data)) out.data = TypeIData{flip3(a->right), flip3(a->left)};
  if (auto* b = std::get_if<TypeIIData>(&cert.data)) {
    IndexSet4 c(n - b->cell[3], n - b->cell[2], n - b->cell[1], n - b->cell[0]);
    out.data = TypeIIData{c, is_exceptional_affine(c)};
  }
  if (auto* c = std::get_if<TypeIIIData>(&cert.data)) {
    std::array<int, 2> tie{n - c->tie[1], n - c->tie[0]};
    out.data = TypeIIIData{flip3(c->sigma), c->g, c->d, tie};
  }
  for (auto it = cert.subdivision.rbegin(); it != cert.subdivision.rend(); ++it) {
    std::vector<int> cell;
    for (auto jt = it->rbegin(); jt != it->rend(); ++jt) cell.push_back(n - *jt);
    out.subdivision.push_back(std::move(cell));
  }
  out.interior = cert.interior;
  return out;
}

inline ClassificationResult classify(const WeightVector& w) {
  const int n = w.n();
  if (n < 4) throw InvalidArgument("classification needs n >= 4");
  const MarkedSubdivision hull = newton_diagram(w);
  const std::vector<int> V = hull.vertices();
  const auto marked = hull.marked_cells();
  ClassificationResult res;

  auto single_marked_support = [&]() -> const std::vector<int>* {
    if (marked.size() != 1) return nullptr;
    return &hull.cells[marked[0]].support;
  };

  // type I
  struct Located {
    std::array<int, 3> t;
  };
  std::vector<Located> triples;
  for (const auto& cell : hull.cells) {
    const auto& S = cell.support;
    for (std::size_t a = 0; a < S.size(); ++a)
      for (std::size_t b = a + 1; b < S.size(); ++b)
        for (std::size_t c = b + 1; c < S.size(); ++c) triples.push_back({{S[a], S[b], S[c]}});
  }
  for (std::size_t x = 0; x < triples.size(); ++x)
    for (std::size_t y = 0; y < triples.size(); ++y) {
      const auto& A = triples[x].t;
      const auto& B = triples[y].t;
      if (A[2] > B[0]) continue;
      ConeCertificate cert;
      cert.data = TypeIData{A, B};
      cert.subdivision = detail::build_subdivision(V, {{A[0], A[1], A[2]}, {B[0], B[1], B[2]}});
      cert.interior = marked.size() == 2 && hull.cells[marked[0]].support == std::vector<int>(A.begin(), A.end()) &&
                      hull.cells[marked[1]].support == std::vector<int>(B.begin(), B.end());
      res.certificates.push_back(std::move(cert));
    }

  // type II
  bool saw_translation = false;
  for (const auto& cell : hull.cells) {
    const auto& S = cell.support;
    for (std::size_t a = 0; a < S.size(); ++a)
      for (std::size_t b = a + 1; b < S.size(); ++b)
        for (std::size_t c = b + 1; c < S.size(); ++c)
          for (std::size_t d = c + 1; d < S.size(); ++d) {
            IndexSet4 J(S[a], S[b], S[c], S[d]);
            auto aff = is_exceptional_affine(J);
            if (aff && aff->scale == 1) {
              saw_translation = true;
              continue;
            }
            ConeCertificate cert;
            cert.data = TypeIIData{J, aff};
            cert.subdivision = detail::build_subdivision(V, {{J[0], J[1], J[2], J[3]}});
            const auto* only = single_marked_support();
            cert.interior = only && *only == std::vector<int>(J.idx.begin(), J.idx.end());
            res.certificates.push_back(std::move(cert));
          }
  }

  // type III
  bool saw_single_tie = false;
  for (const auto& cell : hull.cells) {
    const auto& S = cell.support;
    for (std::size_t a = 0; a < S.size(); ++a)
      for (std::size_t b = a + 1; b < S.size(); ++b)
        for (std::size_t c = b + 1; c < S.size(); ++c) {
          std::array<int, 3> sigma{S[a], S[b], S[c]};
          const int g = std::gcd(sigma[2] - sigma[0], sigma[1] - sigma[0]);
          if (g < 2) continue;
          for (int d : divisors_of(g)) {
            if (d < 2) continue;
            std::vector<int> N = detail::non_congruent(n, sigma[0], d);
            std::optional<Rational> best;
            std::vector<int> argmin;
            for (int j : N) {
              Rational hj = detail::hidden_height(w, sigma, j);
              if (!best || hj < *best) {
                best = hj;
                argmin = {j};
              } else if (hj == *best) {
                argmin.push_back(j);
              }
            }
            if (argmin.size() < 2) {
              saw_single_tie = true;
              continue;
            }
            const auto* only = single_marked_support();
            bool sigma_is_cell = only && *only == std::vector<int>(sigma.begin(), sigma.end());
            for (std::size_t p = 0; p < argmin.size(); ++p)
              for (std::size_t r = p + 1; r < argmin.size(); ++r) {
                ConeCertificate cert;
                cert.data = TypeIIIData{sigma, g, d, {argmin[p], argmin[r]}};
                cert.subdivision = detail::build_subdivision(V, {{sigma[0], sigma[1], sigma[2]}});
                cert.interior = sigma_is_cell && argmin.size() == 2;
                res.certificates.push_back(std::move(cert));
              }
          }
        }
  }

  res.member = !res.certificates.empty();
  if (!res.member) {
    std::vector<std::string> reasons;
    if (marked.empty()) reasons.push_back("no marked cell");
    if (saw_translation) reasons.push_back("translation of exceptional configuration");
    if (marked.size() == 1 && hull.cells[marked[0]].lattice_length() == 3)
      reasons.push_back("single marked cell of lattice length 3");
    if (saw_single_tie) reasons.push_back("hidden-tie minimum attained once");
    if (reasons.empty()) reasons.push_back("single marked cell with one mark and no hidden tie");
    std::string joined;
    for (const auto& r : reasons) joined += (joined.empty() ? "" : "; ") + r;
    res.refusal_reason = joined;
  }
  return res;
}

// Visits every maximal cone descriptor for the given n. The subdivision of
// each descriptor is the full marked subdivision of the cone's interior.
inline std::size_t for_each_cone(int n, const std::function<void(const ConeCertificate&)>& visit,
                                 std::size_t budget = 20000000) {
  if (n < 4 || n > 12) throw InvalidArgument("cone enumeration supports 4 <= n <= 12");
  std::size_t count = 0;
  auto emit = [&](ConeCertificate&& c) {
    if (++count > budget) throw BudgetExceeded("cone enumeration exceeded its budget");
    c.interior = true;
    visit(c);
  };
  const unsigned masks = 1U << static_cast<unsigned>(n - 1);
  for (unsigned mask = 0; mask < masks; ++mask) {
    std::vector<int> bp{0};
    for (int j = 1; j < n; ++j)
      if (mask & (1U << static_cast<unsigned>(j - 1))) bp.push_back(j);
    bp.push_back(n);
    const std::size_t cells = bp.size() - 1;
    // type I
    for (std::size_t x = 0; x < cells; ++x) {
      int l1 = bp[x], r1 = bp[x + 1];
      if (r1 - l1 < 2) continue;
      for (std::size_t y = x + 1; y < cells; ++y) {
        int l2 = bp[y], r2 = bp[y + 1];
        if (r2 - l2 < 2) continue;
        for (int m1 = l1 + 1; m1 < r1; ++m1)
          for (int m2 = l2 + 1; m2 < r2; ++m2) {
            ConeCertificate c;
            c.data = TypeIData{{l1, m1, r1}, {l2, m2, r2}};
            c.subdivision = detail::build_subdivision(bp, {{l1, m1, r1}, {l2, m2, r2}});
            emit(std::move(c));
          }
      }
    }
    for (std::size_t x = 0; x < cells; ++x) {
      int l = bp[x], r = bp[x + 1];
      // type II
      for (int a = l + 1; a < r; ++a)
        for (int b = a + 1; b < r; ++b) {
          IndexSet4 J(l, a, b, r);
          auto aff = is_exceptional_affine(J);
          if (aff && aff->scale == 1) continue;
          ConeCertificate c;
          c.data = TypeIIData{J, aff};
          c.subdivision = detail::build_subdivision(bp, {{l, a, b, r}});
          emit(std::move(c));
        }
      // type III
      for (int m = l + 1; m < r; ++m) {
        const int g = std::gcd(r - l, m - l);
        if (g < 2) continue;
        Subdivision pi = detail::build_subdivision(bp, {{l, m, r}});
        for (int d : divisors_of(g)) {
          if (d < 2) continue;
          std::vector<int> N = detail::non_congruent(n, l, d);
          for (std::size_t p = 0; p < N.size(); ++p)
            for (std::size_t q = p + 1; q < N.size(); ++q) {
              TypeIIIData t{{l, m, r}, g, d, {N[p], N[q]}};
              if (!hidden_tie_feasible(pi, t)) continue;
              ConeCertificate c;
              c.data = t;
              c.subdivision = pi;
              emit(std::move(c));
            }
        }
      }
    }
  }
  return count;
}

struct ConeDescriptor {
  ConeCertificate certificate;
  HDescription h;
};

inline std::vector<ConeDescriptor> enumerate_cones(int n, std::size_t budget = 2000000) {
  std::vector<ConeDescriptor> out;
  for_each_cone(
      n, [&](const ConeCertificate& c) { out.push_back({c, h_description(c, n)}); }, budget);
  return out;
}

}  // namespace tropsev
