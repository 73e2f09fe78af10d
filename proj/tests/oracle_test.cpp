#include <gtest/gtest.h>

#include "tropsev/oracle.hpp"

using namespace tropsev;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }
RingPtr Q() { return CoeffRing::rationals(); }
PuiseuxTrunc c(long v) { return PuiseuxTrunc::constant(Q(), q(v)); }
PuiseuxTrunc tp(const Rational& e) { return PuiseuxTrunc::t_power(Q(), e); }

WeightVector wv(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long a : v) out.push_back(q(a));
  return WeightVector(out);
}

std::string histogram(const CrossValidationReport& r) {
  std::string s;
  for (const auto& [t, k] : r.histogram) s += to_string(t) + ":" + std::to_string(k) + " ";
  return s;
}

}  // namespace

TEST(ForwardMap, Examples) {
  EXPECT_EQ(forward_map(tp(1), {tp(-1)}, tp(1)).w, wv({2, 1, 0, 0, 0, 1}));
  EXPECT_EQ(forward_map(c(-1) - tp(1), {tp(2)}, c(1)).w, wv({2, 0, 1, 0, 1, 0}));
  EXPECT_EQ(forward_map(c(2), {}, c(1)).w, wv({0, 0, 0, 0, 0}));
}

TEST(ForwardMap, ExactExpansion) {
  // (x-1)^2 (x-2)^2 = x^4 - 6x^3 + 13x^2 - 12x + 4
  auto img = forward_map(c(2), {}, c(1));
  std::vector<long> expect{4, -12, 13, -6, 1};
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_EQ(img.coefficients[i], c(expect[i]));
}

TEST(ForwardMap, Errors) {
  EXPECT_THROW(forward_map(c(1), {}, c(1)), InvalidArgument);
  EXPECT_THROW(forward_map(c(2), {PuiseuxTrunc(Q())}, c(1)), InvalidArgument);
  // (x-1)^2 (x+1)^2 = x^4 - 2x^2 + 1 has vanishing odd coefficients
  EXPECT_THROW(forward_map(c(-1), {}, c(1)), NonGenericWeight);
  PuiseuxTrunc fuzzy = c(-1) + PuiseuxTrunc::zero_up_to(Q(), q(2));
  EXPECT_THROW(forward_map(fuzzy, {}, c(1)), PrecisionExhausted);
}

TEST(ForwardMap, ProfileChecksCatchMismatch) {
  ForwardSample s{Q(), tp(1), {tp(-1)}, tp(1)};
  auto img = forward_map(s.b, s.simple, s.lead);
  EXPECT_TRUE(profile_failures(s, img).empty());
  ForwardSample wrong = s;
  wrong.simple = {tp(-2)};
  EXPECT_FALSE(profile_failures(wrong, img).empty());
  ForwardSample wrong_lead = s;
  wrong_lead.b = tp(1) * c(3);
  EXPECT_FALSE(profile_failures(wrong_lead, img).empty());
}

TEST(CrossValidate, GenericSamples) {
  for (int n = 4; n <= 8; ++n) {
    auto r = cross_validate(n, n <= 6 ? 150 : 60, 100 + static_cast<std::uint64_t>(n));
    for (const auto& f : r.failures) ADD_FAILURE() << f;
    EXPECT_GT(r.members, 0);
    EXPECT_EQ(r.members + r.degenerate, r.samples);
  }
}

TEST(CrossValidate, ReflectedNodeGivesTypesIIAndIII) {
  auto r = cross_validate(6, 150, 7, ForwardSampler::Mode::reflected_node);
  for (const auto& f : r.failures) ADD_FAILURE() << f;
  EXPECT_EQ(r.histogram.count(ConeType::I), 0U) << histogram(r);
  EXPECT_GT(r.members, 0);
}

TEST(CrossValidate, SeparatedNodesGiveTypeI) {
  ForwardSampler sampler(9);
  for (int i = 0; i < 150; ++i) {
    ForwardSample s = sampler.sample(6, ForwardSampler::Mode::separated_nodes);
    auto img = forward_map(s.b, s.simple, s.lead);
    auto r = classify(img.w);
    ASSERT_TRUE(r.member) << s.describe();
    bool type_I = false;
    for (const auto& cert : r.certificates) type_I = type_I || cert.type() == ConeType::I;
    EXPECT_TRUE(type_I) << img.w.to_string() << " from " << s.describe();
  }
}

TEST(CrossValidate, Deterministic) {
  auto a = cross_validate(5, 40, 3), b = cross_validate(5, 40, 3);
  EXPECT_EQ(a.histogram, b.histogram);
  EXPECT_EQ(a.members, b.members);
}

TEST(NegativeControl, ExceptionalAndBrokenTie) {
  for (const auto& w : {wv({0, 0, 0, 1, 0}), wv({2, 0, 1, 0, 2, 0})}) {
    auto r = negative_control(w, 2000, 5);
    EXPECT_EQ(r.hits, 0) << w.to_string();
    EXPECT_EQ(r.samples, 2000);
  }
}
