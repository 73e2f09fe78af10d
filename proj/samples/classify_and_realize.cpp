// Classifies a few weight vectors and, for members, builds and checks a
// polynomial with two double roots realizing them.
#include <iostream>

#include "tropsev/witness.hpp"

using namespace tropsev;

int main(int argc, char** argv) {
  std::vector<std::string> inputs{"2,1,0,0,0,1", "2,0,0,1,0,0", "2,0,1,0,1,0", "2,0,1,0,2,0"};
  if (argc > 1) inputs.assign(argv + 1, argv + argc);
  for (const auto& text : inputs) {
    WeightVector w = WeightVector::parse(text);
    ClassificationResult r = classify(w);
    std::cout << w.to_string() << ": ";
    if (!r.member) {
      std::cout << "not a member (" << r.refusal_reason.value_or("") << ")\n";
      continue;
    }
    std::cout << "member, cone type " << to_string(r.certificates.front().type()) << "\n";
    Witness wit = construct_witness(w, r.certificates.front());
    auto [a, b] = wit.original_nodes();
    std::cout << "  double roots " << a.to_string() << " and " << b.to_string() << "\n";
    auto coeffs = wit.original_coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) std::cout << "  c" << i << " = " << coeffs[i].to_string() << "\n";
    std::cout << "  verified: " << (verify_witness(w, wit).ok() ? "yes" : "no") << "\n";
  }
}
