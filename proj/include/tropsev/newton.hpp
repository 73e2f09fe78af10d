#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropsev/puiseux.hpp"

namespace tropsev {

class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<Rational> entries) : w_(std::move(entries)) {
    if (w_.size() < 2) throw InvalidArgument("weight vector needs at least two entries");
  }
  WeightVector(std::initializer_list<Rational> entries) : WeightVector(std::vector<Rational>(entries)) {}

  static WeightVector parse(std::string_view text) { return WeightVector(parse_rational_list(text)); }

  int n() const { return static_cast<int>(w_.size()) - 1; }
  const Rational& operator[](int i) const { return w_[static_cast<std::size_t>(i)]; }
  const std::vector<Rational>& entries() const { return w_; }
  friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.w_ == b.w_; }

  WeightVector reversed() const { return WeightVector(std::vector<Rational>(w_.rbegin(), w_.rend())); }
  WeightVector scaled(const Rational& s) const {
    std::vector<Rational> v = w_;
    for (auto& x : v) x *= s;
    return WeightVector(std::move(v));
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (i) s += ',';
      s += w_[i].get_str();
    }
    return s;
  }

 private:
  std::vector<Rational> w_;
};

// Exact comparison of the lifted point (j, w_j) against the line through
// (l, w_l), (r, w_r): sign of (r-l) w_j - (r-j) w_l - (j-l) w_r.
inline int side_of_line(const WeightVector& w, int l, int r, int j) {
  Rational h = Rational(r - l) * w[j] - Rational(r - j) * w[l] - Rational(j - l) * w[r];
  return sgn(h);
}

struct Cell {
  std::vector<int> support;    // sorted, endpoints included
  Rational slope;
  std::array<Integer, 2> eta;  // primitive interior normal (-p, q) for slope p/q

  int left() const { return support.front(); }
  int right() const { return support.back(); }
  int lattice_length() const { return right() - left(); }
  std::vector<int> marked() const { return std::vector<int>(support.begin() + 1, support.end() - 1); }
  bool is_marked() const { return support.size() > 2; }
  bool contains(int j) const { return std::binary_search(support.begin(), support.end(), j); }
  friend bool operator==(const Cell& a, const Cell& b) { return a.support == b.support && a.slope == b.slope; }
};

struct MarkedSubdivision {
  std::vector<Cell> cells;

  std::vector<int> vertices() const {
    std::vector<int> v;
    for (const auto& c : cells) v.push_back(c.left());
    if (!cells.empty()) v.push_back(cells.back().right());
    return v;
  }
  std::vector<std::size_t> marked_cells() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].is_marked()) out.push_back(i);
    return out;
  }
  std::vector<std::vector<int>> supports() const {
    std::vector<std::vector<int>> out;
    for (const auto& c : cells) out.push_back(c.support);
    return out;
  }
  // Index of the cell whose closed segment contains j and that starts at or before j.
  std::size_t cell_containing(int j) const {
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].left() <= j && j <= cells[i].right()) return i;
    throw InvalidArgument("index outside the subdivision");
  }
  // Value at j of the lower hull (piecewise-linear).
  Rational hull_value(const WeightVector& w, int j) const {
    const Cell& c = cells[cell_containing(j)];
    return w[c.left()] + c.slope * (j - c.left());
  }
};

inline Cell make_cell(const WeightVector& w, std::vector<int> support) {
  Cell c;
  c.support = std::move(support);
  c.slope = (w[c.right()] - w[c.left()]) / Rational(c.right() - c.left());
  c.eta = {Integer(-c.slope.get_num()), Integer(c.slope.get_den())};
  return c;
}

inline MarkedSubdivision newton_diagram(const WeightVector& w) {
  const int n = w.n();
  std::vector<int> hull;
  for (int j = 0; j <= n; ++j) {
    while (hull.size() >= 2) {
      int a = hull[hull.size() - 2];
      int b = hull.back();
      // pop b unless it lies strictly below the segment a-j
      if (side_of_line(w, a, j, b) < 0) break;
      hull.pop_back();
    }
    hull.push_back(j);
  }
  MarkedSubdivision out;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    int l = hull[k], r = hull[k + 1];
    std::vector<int> support{l};
    for (int j = l + 1; j < r; ++j)
      if (side_of_line(w, l, r, j) == 0) support.push_back(j);
    support.push_back(r);
    out.cells.push_back(make_cell(w, std::move(support)));
  }
  return out;
}

struct AffineTransform {
  Rational alpha;  // w'_i = w_i + alpha * i + shift
  Rational shift;

  WeightVector apply(const WeightVector& w) const {
    std::vector<Rational> v;
    for (int i = 0; i <= w.n(); ++i) v.push_back(w[i] + alpha * i + shift);
    return WeightVector(std::move(v));
  }
  AffineTransform inverse() const { return {-alpha, -shift}; }
  friend bool operator==(const AffineTransform& a, const AffineTransform& b) {
    return a.alpha == b.alpha && a.shift == b.shift;
  }
};

// Transform making the line through the given cell horizontal at height 0.
inline AffineTransform normalizing_transform(const WeightVector& w, const Cell& cell) {
  Rational alpha = -cell.slope;
  Rational shift = -(w[cell.left()] + alpha * cell.left());
  return {alpha, shift};
}

inline std::pair<WeightVector, AffineTransform> normalize(const WeightVector& w, const Cell& cell) {
  AffineTransform t = normalizing_transform(w, cell);
  return {t.apply(w), t};
}

inline std::pair<WeightVector, AffineTransform> normalize(const WeightVector& w, std::size_t cell_index) {
  MarkedSubdivision pi = newton_diagram(w);
  if (cell_index >= pi.cells.size()) throw InvalidArgument("cell index out of range");
  return normalize(w, pi.cells[cell_index]);
}

// Dense coefficient list over the ring; entries off the cell support are zero.
struct ResidualPolynomial {
  std::vector<RingElem> coeffs;

  RingElem evaluate(const RingElem& x) const {
    RingElem acc = RingElem::zero(x.ring());
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  }
  ResidualPolynomial derivative() const {
    ResidualPolynomial d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(Rational(static_cast<long>(i)) * coeffs[i]);
    return d;
  }
  // Multiplicity of a root (0 if not a root). Throws DynamicSplit when undecidable.
  int root_multiplicity(const RingElem& x) const {
    ResidualPolynomial p = *this;
    int k = 0;
    while (!p.coeffs.empty() && !p.evaluate(x).nonzero_decided()) {
      bool all_zero = true;
      for (const auto& c : p.coeffs) all_zero = all_zero && c.is_zero();
      if (all_zero) throw InvalidArgument("root multiplicity of the zero polynomial");
      p = p.derivative();
      ++k;
    }
    return k;
  }
};

inline ResidualPolynomial residual_polynomial(std::span<const PuiseuxTrunc> coeffs, const Cell& cell,
                                              const WeightVector& w) {
  if (static_cast<int>(coeffs.size()) != w.n() + 1) throw InvalidArgument("coefficient count does not match n");
  const RingPtr& ring = coeffs.front().ring();
  ResidualPolynomial r;
  r.coeffs.assign(coeffs.size(), RingElem::zero(ring));
  for (int i = 0; i <= w.n(); ++i) {
    if (coeffs[static_cast<std::size_t>(i)].valuation() != w[i])
      throw InvalidArgument("coefficient " + std::to_string(i) + " has valuation different from w");
  }
  for (int i : cell.support) r.coeffs[static_cast<std::size_t>(i)] = coeffs[static_cast<std::size_t>(i)].leading_coefficient();
  return r;
}

// One (v, lattice length) pair per cell, v = -slope.
inline std::vector<std::pair<Rational, int>> valuation_profile(const MarkedSubdivision& pi) {
  std::vector<std::pair<Rational, int>> out;
  for (const auto& c : pi.cells) out.emplace_back(-c.slope, c.lattice_length());
  return out;
}

}  // namespace tropsev
