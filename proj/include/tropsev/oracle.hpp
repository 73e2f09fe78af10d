#pragma once

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tropsev/classifier.hpp"
#include "tropsev/newton.hpp"
#include "tropsev/puiseux.hpp"

namespace tropsev {

struct ForwardImage {
  std::vector<PuiseuxTrunc> coefficients;
  WeightVector w;
};

// Coefficients of lead * (x-1)^2 (x-b)^2 prod (x - a_i), lowest degree first.
inline ForwardImage forward_map(const PuiseuxTrunc& node_b, const std::vector<PuiseuxTrunc>& simple_roots,
                                const PuiseuxTrunc& lead) {
  const RingPtr& R = node_b.ring();
  PuiseuxTrunc one = PuiseuxTrunc::constant(R, 1);
  if ((node_b - one).is_exact_zero()) throw InvalidArgument("second node coincides with 1");
  if (node_b.is_exact_zero() || lead.is_exact_zero()) throw InvalidArgument("zero node or leading coefficient");
  std::vector<PuiseuxTrunc> roots{one, one, node_b, node_b};
  for (const auto& a : simple_roots) {
    if (a.is_exact_zero()) throw InvalidArgument("zero root");
    roots.push_back(a);
  }
  std::vector<PuiseuxTrunc> f{lead};
  for (const auto& a : roots) {
    std::vector<PuiseuxTrunc> g(f.size() + 1, PuiseuxTrunc(R));
    for (std::size_t i = 0; i < f.size(); ++i) {
      g[i + 1] += f[i];
      g[i] -= f[i] * a;
    }
    f = std::move(g);
  }
  std::vector<Rational> w;
  for (const auto& c : f) {
    if (c.is_exact_zero()) throw NonGenericWeight("a coefficient vanishes identically");
    if (!c.has_terms()) throw PrecisionExhausted("a coefficient vanishes up to the working truncation");
    w.push_back(c.valuation());
  }
  return {std::move(f), WeightVector(std::move(w))};
}

// Sampled input of the forward map over cyclotomic(order).
struct ForwardSample {
  RingPtr ring;
  PuiseuxTrunc b;
  std::vector<PuiseuxTrunc> simple;
  PuiseuxTrunc lead;

  std::vector<PuiseuxTrunc> roots() const {
    std::vector<PuiseuxTrunc> r{PuiseuxTrunc::constant(ring, 1), PuiseuxTrunc::constant(ring, 1), b, b};
    r.insert(r.end(), simple.begin(), simple.end());
    return r;
  }
  std::string describe() const {
    std::ostringstream os;
    os << "ring=" << ring->describe() << " b=" << b.to_string() << " lead=" << lead.to_string() << " simple=[";
    for (std::size_t i = 0; i < simple.size(); ++i) os << (i ? ", " : "") << simple[i].to_string();
    os << "]";
    return os.str();
  }
};

// Sampling distribution: valuations are rationals p/q with q <= 4 and
// |p/q| <= 2; leading coefficients are nonzero integers in [-3, 3] or
// +-zeta^k for zeta a primitive root of unity of order <= 6. Roots carry a
// second term with probability 1/2 so that equal leading terms still give
// distinct roots.
class ForwardSampler {
 public:
  enum class Mode {
    generic,
    reflected_node,   // val(b) = 0, b = -1 + higher order terms; other root
                      // valuations distinct and nonzero
    separated_nodes,  // val(b) != 0
  };

  explicit ForwardSampler(std::uint64_t seed) : rng_(seed) {}

  Rational valuation() {
    int q = uniform(1, 4);
    return make_rational(uniform(-2 * q, 2 * q), q);
  }
  Rational positive_step() {
    int q = uniform(1, 4);
    return make_rational(uniform(1, 2 * q), q);
  }
  RingElem leading(const RingPtr& R) {
    if (R->order() > 1 && uniform(0, 1)) {
      RingElem z = RingElem::generator(R).pow(uniform(0, R->order() - 1));
      return uniform(0, 1) ? z : -z;
    }
    int a = 0;
    while (a == 0) a = uniform(-3, 3);
    return RingElem(R, Rational(a));
  }
  PuiseuxTrunc root(const RingPtr& R, const Rational& v, const RingElem& lc) {
    PuiseuxTrunc r = PuiseuxTrunc::monomial(lc, v);
    if (uniform(0, 1)) r += PuiseuxTrunc::monomial(leading(R), v + positive_step());
    return r;
  }

  ForwardSample sample(int n, Mode mode = Mode::generic) {
    if (n < 4) throw InvalidArgument("degree must be at least 4");
    ForwardSample s;
    s.ring = CoeffRing::cyclotomic(uniform(1, 6));
    const RingPtr& R = s.ring;
    PuiseuxTrunc one = PuiseuxTrunc::constant(R, 1);
    for (;;) {
      switch (mode) {
        case Mode::generic: {
          Rational v = uniform(0, 2) == 0 ? Rational(0) : valuation();
          s.b = root(R, v, leading(R));
          break;
        }
        case Mode::reflected_node:
          s.b = PuiseuxTrunc::constant(R, -1) + PuiseuxTrunc::monomial(leading(R), positive_step());
          break;
        case Mode::separated_nodes: {
          Rational v = 0;
          while (v == 0) v = valuation();
          s.b = root(R, v, leading(R));
          break;
        }
      }
      if (!(s.b - one).is_exact_zero()) break;
    }
    s.simple.clear();
    std::vector<Rational> used{0};
    for (int i = 4; i < n; ++i) {
      Rational v = valuation();
      if (mode == Mode::reflected_node)
        while (std::find(used.begin(), used.end(), v) != used.end()) v = valuation();
      used.push_back(v);
      s.simple.push_back(root(R, v, leading(R)));
    }
    s.lead = PuiseuxTrunc::monomial(leading(R), valuation());
    return s;
  }

  // Roots distributed along a prescribed valuation profile: one root per unit
  // of lattice length, the node 1 in the valuation-0 cell and b in a cell with
  // room for two more. Leading coefficients are biased towards -1 and 1 so
  // that cancellations on the cell are frequent.
  std::optional<ForwardSample> sample_with_profile(const std::vector<std::pair<Rational, int>>& profile,
                                                   const Rational& lead_valuation) {
    std::vector<std::pair<Rational, int>> room = profile;
    auto zero = std::find_if(room.begin(), room.end(), [](const auto& p) { return p.first == 0; });
    if (zero == room.end() || zero->second < 2) return std::nullopt;
    zero->second -= 2;
    std::vector<std::size_t> fits;
    for (std::size_t i = 0; i < room.size(); ++i)
      if (room[i].second >= 2) fits.push_back(i);
    if (fits.empty()) return std::nullopt;
    ForwardSample s;
    s.ring = CoeffRing::cyclotomic(uniform(1, 6));
    const RingPtr& R = s.ring;
    auto biased = [&]() {
      int k = uniform(0, 3);
      return k == 0 ? RingElem(R, Rational(-1)) : k == 1 ? RingElem(R, Rational(1)) : leading(R);
    };
    auto& cell = room[fits[static_cast<std::size_t>(uniform(0, static_cast<int>(fits.size()) - 1))]];
    cell.second -= 2;
    PuiseuxTrunc one = PuiseuxTrunc::constant(R, 1);
    do {
      s.b = root(R, cell.first, biased());
    } while ((s.b - one).is_exact_zero());
    for (const auto& [v, count] : room)
      for (int k = 0; k < count; ++k) s.simple.push_back(root(R, v, biased()));
    s.lead = PuiseuxTrunc::monomial(leading(R), lead_valuation);
    return s;
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64 rng_;
};

// Checks that the Newton diagram of the image reflects the sampled roots:
// one cell of slope -v and lattice length k per valuation v of multiplicity
// k, and on that cell a residual polynomial vanishing at each leading
// coefficient to the summed multiplicity.
inline std::vector<std::string> profile_failures(const ForwardSample& s, const ForwardImage& img) {
  std::vector<std::string> out;
  std::vector<PuiseuxTrunc> roots = s.roots();
  std::map<Rational, int> by_val;
  for (const auto& r : roots) by_val[r.valuation()] += 1;
  MarkedSubdivision pi = newton_diagram(img.w);
  std::map<Rational, int> seen;
  for (const auto& [v, len] : valuation_profile(pi)) seen[v] += len;
  if (seen != by_val) out.push_back("valuation profile differs from the root valuations");
  for (const auto& cell : pi.cells) {
    Rational v = -cell.slope;
    ResidualPolynomial res = residual_polynomial(img.coefficients, cell, img.w);
    for (const auto& r : roots) {
      if (r.valuation() != v) continue;
      const RingElem& lc = r.leading_coefficient();
      int expected = 0;
      for (const auto& o : roots)
        if (o.valuation() == v && o.leading_coefficient() == lc) ++expected;
      if (res.root_multiplicity(lc) != expected)
        out.push_back("residual multiplicity of " + lc.to_string() + " on cell of slope " + cell.slope.get_str() +
                      " differs from " + std::to_string(expected));
    }
  }
  return out;
}

struct CrossValidationReport {
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  int members = 0;
  int degenerate = 0;  // a coefficient vanished identically
  std::map<ConeType, int> histogram;  // certificate types, counted per certificate
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Forward samples must classify as members with profile and residual checks
// passing. Failures record seed, index and the sample itself.
inline CrossValidationReport cross_validate(int n, int sample_count, std::uint64_t seed,
                                            ForwardSampler::Mode mode = ForwardSampler::Mode::generic) {
  if (n < 4 || n > 10) throw InvalidArgument("cross validation runs for 4 <= n <= 10");
  CrossValidationReport rep;
  rep.n = n;
  rep.samples = sample_count;
  rep.seed = seed;
  ForwardSampler sampler(seed);
  for (int i = 0; i < sample_count; ++i) {
    ForwardSample s = sampler.sample(n, mode);
    auto where = [&] { return "seed " + std::to_string(seed) + " sample " + std::to_string(i) + ": "; };
    ForwardImage img;
    try {
      img = forward_map(s.b, s.simple, s.lead);
    } catch (const NonGenericWeight&) {
      ++rep.degenerate;
      continue;
    }
    ClassificationResult cls = classify(img.w);
    if (!cls.member) {
      rep.failures.push_back(where() + img.w.to_string() + " rejected (" + cls.refusal_reason.value_or("") + ") from " +
                             s.describe());
      continue;
    }
    ++rep.members;
    for (const auto& c : cls.certificates) ++rep.histogram[c.type()];
    for (const auto& f : profile_failures(s, img)) rep.failures.push_back(where() + f + " for " + s.describe());
  }
  return rep;
}

struct NegativeControlReport {
  WeightVector w;
  int samples = 0;
  int hits = 0;  // samples whose valuation vector equals w
  int degenerate = 0;
  std::vector<std::string> hit_descriptions;
};

// Forward samples aimed at the valuation profile of w; none should realize w.
// A bounded smoke test, not a proof.
inline NegativeControlReport negative_control(const WeightVector& w, int sample_count, std::uint64_t seed) {
  NegativeControlReport rep;
  rep.w = w;
  rep.samples = sample_count;
  ForwardSampler sampler(seed);
  auto profile = valuation_profile(newton_diagram(w));
  std::mt19937_64 coin(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < sample_count; ++i) {
    std::optional<ForwardSample> s;
    if (coin() % 4 != 0) s = sampler.sample_with_profile(profile, w[w.n()]);
    if (!s) s = sampler.sample(w.n());
    try {
      ForwardImage img = forward_map(s->b, s->simple, s->lead);
      if (img.w == w) {
        ++rep.hits;
        rep.hit_descriptions.push_back(s->describe());
      }
    } catch (const NonGenericWeight&) {
      ++rep.degenerate;
    }
  }
  return rep;
}

}  // namespace tropsev
