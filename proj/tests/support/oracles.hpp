#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "tropsev/poly.hpp"

namespace oracle_ref {

using tropsev::Integer;
using tropsev::IntPoly;

// det of the 4x4 matrix with columns (1, j, x^j, j x^j) by Leibniz expansion.
inline IntPoly leibniz_minor(const std::array<int, 4>& J) {
  auto entry = [&](int row, int col) {
    int j = J[static_cast<std::size_t>(col)];
    switch (row) {
      case 0:
        return IntPoly::constant(1);
      case 1:
        return IntPoly::constant(Integer(j));
      case 2:
        return IntPoly::monomial(Integer(1), j);
      default:
        return IntPoly::monomial(Integer(j), j);
    }
  };
  std::array<int, 4> perm{0, 1, 2, 3};
  IntPoly det;
  do {
    int inversions = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
    IntPoly term = IntPoly::constant(inversions % 2 ? -1 : 1);
    for (int r = 0; r < 4; ++r) term *= entry(r, perm[static_cast<std::size_t>(r)]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Brute-force test of J = base * s + r over all s, r in range.
inline bool brute_exceptional_affine(const std::array<int, 4>& J) {
  static const int bases[5][4] = {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 2, 3, 4}, {0, 3, 4, 6}, {0, 2, 3, 6}};
  for (const auto& b : bases)
    for (int s = 1; s <= J[3] + 1; ++s)
      for (int r = 0; r <= J[3]; ++r) {
        bool ok = true;
        for (int k = 0; k < 4; ++k) ok = ok && (b[k] * s + r == J[static_cast<std::size_t>(k)]);
        if (ok) return true;
      }
  return false;
}

}  // namespace oracle_ref
