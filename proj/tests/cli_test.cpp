#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tropsev/cli.hpp"

using namespace tropsev;
using tropsev::io::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "tropsev");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / ("tropsev_cli_test_" + name);
  std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST(Cli, ClassifyExample) {
  Outcome r = run({"classify", "--n", "5", "--w", "2,0,1,0,1,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.j();
  EXPECT_EQ(j["schema"], "tropsev/1");
  EXPECT_TRUE(j["member"].get<bool>());
  ASSERT_EQ(j["certificates"].size(), 1U);
  const json& c = j["certificates"][0];
  EXPECT_EQ(c["type"], "III");
  EXPECT_EQ(c["sigma"], json({1, 3, 5}));
  EXPECT_EQ(c["d"], 2);
  EXPECT_EQ(c["tie"], json({2, 4}));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"classify", "--w", "0,0,0,1,0"}).code, 1);
  EXPECT_EQ(run({"classify", "--w", "0,0,x"}).code, 2);
  EXPECT_EQ(run({"classify", "--n", "4", "--w", "2,0,1,0,1,0"}).code, 2);
  EXPECT_EQ(run({"classify", "--w", "0,0,0,0"}).code, 2);
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"minors", "--J", "0,1,1,3"}).code, 2);
  EXPECT_EQ(run({"cones", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"cones", "--n", "9", "--budget", "10"}).code, 1);
  EXPECT_EQ(run({"witness", "--w", "2,0,1,0,2,0"}).code, 1);
  EXPECT_EQ(run({"verify", "--file", "/nonexistent/witness.json"}).code, 2);
  EXPECT_EQ(run({"verify", "--file", temp_file("garbage.json", "{not json")}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  Outcome refused = run({"classify", "--w", "2,0,1,0,2,0"});
  EXPECT_NE(refused.j()["refusal_reason"].get<std::string>().find("hidden-tie minimum attained once"), std::string::npos);
}

TEST(Cli, Minors) {
  Outcome r = run({"minors", "--J", "0,1,2,3"});
  ASSERT_EQ(r.code, 0);
  json j = r.j();
  EXPECT_EQ(j["poly"], "x^5-4x^4+6x^3-4x^2+x");
  EXPECT_EQ(j["degree"], 5);
  EXPECT_EQ(j["order"], 1);
}

TEST(Cli, WitnessVerifyRoundTrip) {
  for (const auto& w : {"2,1,0,0,0,1", "2,0,0,1,0,0", "2,0,1,0,1,0", "0,1,0,2,0,3,0", "0,2,1,3,0,1,5/2,7/2,0"}) {
    Outcome r = run({"witness", "--w", w, "--trunc", "8"});
    ASSERT_EQ(r.code, 0) << w << r.out;
    json j = r.j();
    EXPECT_TRUE(j["verification"]["ok"].get<bool>());
    EXPECT_GE(parse_rational(j["witness"]["truncation"].get<std::string>()), Rational(8));
    std::string path = temp_file("witness.json", r.out);
    Outcome v = run({"verify", "--file", path});
    EXPECT_EQ(v.code, 0) << w << v.out;
    EXPECT_TRUE(v.j()["verification"]["ok"].get<bool>());

    // a tampered coefficient must fail verification with exit code 1
    json bad = j;
    auto& terms = bad["witness"]["coefficients"][0]["terms"];
    terms[0]["coeff"] = json::array({"12345"});
    Outcome t = run({"verify", "--file", temp_file("tampered.json", bad.dump())});
    EXPECT_EQ(t.code, 1) << w;
  }
}

TEST(Cli, WitnessTypeSelection) {
  Outcome r = run({"witness", "--w", "2,0,1,0,1,0", "--type", "III"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["witness"]["type"], "III");
  EXPECT_EQ(run({"witness", "--w", "2,0,1,0,1,0", "--type", "I"}).code, 1);
  EXPECT_EQ(run({"witness", "--w", "2,0,1,0,1,0", "--type", "IV"}).code, 2);
}

TEST(Cli, ConesCountsAndFilter) {
  Outcome r = run({"--indent", "-1", "cones", "--n", "5", "--type", "III", "--hrep"});
  ASSERT_EQ(r.code, 0);
  json j = r.j();
  EXPECT_EQ(j["count"].get<std::size_t>(), enumerate_cones(5).size());
  for (const auto& c : j["cones"]) {
    EXPECT_EQ(c["type"], "III");
    EXPECT_TRUE(c.contains("inequalities"));
  }
  EXPECT_EQ(j["cones"].size(), static_cast<std::size_t>(j["by_type"]["III"].get<int>()));
}

TEST(Cli, TropKernel) {
  std::string m = temp_file("plane.txt", "# generic plane\n1, 1, 1, 1\n0, t, 2*t^2, 3 + O(t^4)\n");
  std::ifstream in(m);
  ValMatrix M = io::parse_matrix(in);
  for (const auto& w : {"0,0,0,0", "0,1,2,0", "1,0,0,1", "0,0,1,3"}) {
    bool expect = in_trop_kernel(M, parse_rational_list(w)).member;
    Outcome r = run({"tropkernel", "--matrix", m, "--w", w, "--circuits"});
    EXPECT_EQ(r.code, expect ? 0 : 1) << r.out;
    json j = r.j();
    EXPECT_EQ(j["member"].get<bool>(), expect);
    EXPECT_EQ(j["member_via_circuits"].get<bool>(), expect);
    EXPECT_EQ(j["circuits"].size(), 4U);
  }
  std::string e = temp_file("esterov.txt",
                            "1, 1, 1, 1, 1, 1\n"
                            "0, 1, 1, 0, -1, 0\n"
                            "0, 0, 1, 1, 0, -1\n"
                            "0, t^2, t, 0, -1, 0\n"
                            "0, 0, t, 1, 0, -t^2\n");
  EXPECT_EQ(run({"tropkernel", "--matrix", e, "--w", "0,0,0,1,1,0"}).code, 0);
  EXPECT_EQ(run({"tropkernel", "--matrix", e, "--w", "0,0,0,1"}).code, 2);
  EXPECT_EQ(run({"tropkernel", "--matrix", temp_file("bad.txt", "1, t^x\n"), "--w", "0,0"}).code, 2);
}

TEST(Cli, DiagramSvg) {
  Outcome r = run({"diagram", "--w", "2,0,1,0,1,0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("<svg", 0), 0U);
  EXPECT_NE(r.out.find("stroke-dasharray"), std::string::npos);  // hidden tie
  EXPECT_NE(r.out.find("<polygon"), std::string::npos);          // marked point
  Outcome plain = run({"diagram", "--w", "0,1,3,6,10"});
  EXPECT_EQ(plain.out.find("stroke-dasharray"), std::string::npos);
}

TEST(Cli, BatchIsDeterministicAcrossThreads) {
  std::string f = temp_file("batch.txt", "2,1,0,0,0,1\n2,0,0,1,0,0\n2,0,1,0,1,0\n0,0,0,1,0\n0,1,3,6,10\n");
  Outcome one = run({"--threads", "1", "classify", "--batch", f});
  Outcome four = run({"--threads", "4", "classify", "--batch", f});
  EXPECT_EQ(one.code, 1);
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(one.j()["results"].size(), 5U);
}

TEST(SeriesLiteral, Parse) {
  RingPtr Q = CoeffRing::rationals();
  auto t = [&](const Rational& e) { return PuiseuxTrunc::t_power(Q, e); };
  EXPECT_EQ(io::parse_series("t"), t(1));
  EXPECT_EQ(io::parse_series("3/2*t^(1/2) - t^-1"), t(make_rational(1, 2)).scaled(RingElem(Q, make_rational(3, 2))) - t(-1));
  EXPECT_EQ(io::parse_series("2"), PuiseuxTrunc::constant(Q, 2));
  PuiseuxTrunc p = io::parse_series("1 + t + O(t^3)");
  ASSERT_TRUE(p.truncation().has_value());
  EXPECT_EQ(*p.truncation(), Rational(3));
  EXPECT_TRUE(io::parse_series("O(t^2)").is_zero_up_to_truncation());
  EXPECT_THROW(io::parse_series(""), InvalidArgument);
  EXPECT_THROW(io::parse_series("t^"), InvalidArgument);
  EXPECT_THROW(io::parse_series("t^4 + O(t^3)"), InvalidArgument);
  EXPECT_THROW(io::parse_series("2**t"), InvalidArgument);
}

TEST(Json, WitnessRoundTripPreservesEverything) {
  for (const auto& text : {"2,0,0,1,0,0", "0,2,1,3,0,1,5/2,7/2,0"}) {
    WeightVector w = WeightVector::parse(text);
    Witness a = construct_witness(w);
    Witness b = io::witness_from_json(json::parse(io::to_json(a).dump()));
    EXPECT_TRUE(b.ring->same_as(*a.ring));
    EXPECT_EQ(b.b, a.b);
    EXPECT_EQ(b.coefficients, a.coefficients);
    EXPECT_EQ(b.transform, a.transform);
    EXPECT_EQ(b.certificate, a.certificate);
    EXPECT_EQ(b.J, a.J);
    EXPECT_TRUE(verify_witness(w, b).ok());
  }
}
