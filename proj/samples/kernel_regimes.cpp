// Tropical kernel of the two-node bivariate fixture in its three regimes.
#include <iostream>

#include "tropsev/trop_kernel.hpp"

using namespace tropsev;

namespace {

void report(const char* label, const ValMatrix& M, std::vector<Rational> w) {
  auto r = in_trop_kernel(M, w);
  std::cout << label << " w = (";
  for (std::size_t i = 0; i < w.size(); ++i) std::cout << (i ? "," : "") << w[i];
  std::cout << "): " << (r.member ? "in" : "not in") << " the tropical kernel";
  if (!r.member) {
    std::cout << ", J = {";
    for (std::size_t i = 0; i < r.violating_J.size(); ++i) std::cout << (i ? "," : "") << r.violating_J[i] + 1;
    std::cout << "}";
  }
  std::cout << "\n";
}

}  // namespace

int main() {
  RingPtr Q = CoeffRing::rationals();
  auto tp = [&](long e) { return PuiseuxTrunc::t_power(Q, Rational(e)); };
  report("b1 = t       ", esterov_matrix(tp(1), tp(-1)), {0, 0, 0, 1, 1, 0});
  report("b1 = t^-1    ", esterov_matrix(tp(-1), tp(1)), {0, 1, 0, 0, 0, 1});
  PuiseuxTrunc b1 = PuiseuxTrunc::constant(Q, -1) + tp(1);
  report("b1 = -1 + t  ", esterov_matrix_reciprocal(b1), {1, 0, 1, 0, 0, 0});
  report("b1 = -1 + t  ", esterov_matrix_reciprocal(b1), {2, 0, 1, 0, 0, 0});
  report("b2 = 1       ", esterov_matrix(tp(1), PuiseuxTrunc::constant(Q, 1)), {0, 0, 0, 0, 0, 0});
}
