#pragma once

#include <cctype>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tropsev/classifier.hpp"
#include "tropsev/trop_kernel.hpp"
#include "tropsev/witness.hpp"

namespace tropsev::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "tropsev/1";

// Rationals travel as strings so that no precision is lost.
inline json to_json(const Rational& q) { return q.get_str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InvalidArgument("expected a rational as string or integer");
}

inline json to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

inline json to_json(const RatPoly& p) {
  json a = json::array();
  for (int i = 0; i <= p.degree(); ++i) a.push_back(to_json(p.coeff(i)));
  return a;
}

inline RatPoly ratpoly_from_json(const json& j) { return RatPoly(rationals_from_json(j)); }

// Ring elements as coefficient lists in the generator y, lowest degree first.
inline json to_json(const RingElem& e) { return to_json(e.rep()); }

inline RingElem ringelem_from_json(const json& j, const RingPtr& ring) { return RingElem(ring, ratpoly_from_json(j)); }

inline json to_json(const CoeffRing& r) {
  json j;
  switch (r.kind()) {
    case CoeffRing::Kind::rationals:
      j["kind"] = "rationals";
      break;
    case CoeffRing::Kind::cyclotomic:
      j["kind"] = "cyclotomic";
      j["order"] = r.order();
      break;
    case CoeffRing::Kind::dynamic:
      j["kind"] = "dynamic";
      j["modulus"] = to_json(r.modulus());
      break;
  }
  j["description"] = r.describe();
  return j;
}

inline RingPtr ring_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rationals") return CoeffRing::rationals();
  if (kind == "cyclotomic") return CoeffRing::cyclotomic(j.at("order").get<int>());
  if (kind == "dynamic") return CoeffRing::dynamic(ratpoly_from_json(j.at("modulus")));
  throw InvalidArgument("unknown ring kind '" + kind + "'");
}

inline json to_json(const PuiseuxTrunc& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back({{"exp", to_json(t.exponent)}, {"coeff", to_json(t.coefficient)}});
  json j{{"terms", terms}, {"text", p.to_string()}};
  j["trunc"] = p.truncation() ? to_json(*p.truncation()) : json(nullptr);
  return j;
}

inline PuiseuxTrunc series_from_json(const json& j, const RingPtr& ring) {
  std::vector<PuiseuxTrunc::Term> terms;
  for (const auto& t : j.at("terms"))
    terms.push_back({rational_from_json(t.at("exp")), ringelem_from_json(t.at("coeff"), ring)});
  std::optional<Rational> trunc;
  if (j.contains("trunc") && !j.at("trunc").is_null()) trunc = rational_from_json(j.at("trunc"));
  return PuiseuxTrunc(ring, std::move(terms), trunc);
}

// Series literal "c0*t^e0 + c1*t^e1 [+ O(t^T)]" with rational c and e.
// Accepts "t", "-t^2", "3/2", "t^(1/2)", "t^-1".
inline PuiseuxTrunc parse_series(std::string_view text, const RingPtr& ring = CoeffRing::rationals()) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InvalidArgument("empty series literal");
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> InvalidArgument {
    return InvalidArgument("series literal '" + std::string(text) + "': " + what);
  };
  auto read_rational = [&]() {
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    if (pos == start) throw fail("expected a number");
    return parse_rational(s.substr(start, pos - start));
  };
  auto read_exponent = [&]() {
    if (pos < s.size() && s[pos] == '(') {
      ++pos;
      Rational e = read_rational();
      if (pos >= s.size() || s[pos] != ')') throw fail("unclosed exponent");
      ++pos;
      return e;
    }
    return read_rational();
  };
  PuiseuxTrunc out(ring);
  std::optional<Rational> trunc;
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw fail("expected + or - between terms");
    }
    first = false;
    if (s.compare(pos, 4, "O(t^") == 0) {
      if (sign < 0) throw fail("negative order term");
      pos += 4;
      Rational T = read_exponent();
      if (pos >= s.size() || s[pos] != ')') throw fail("unclosed O(...)");
      ++pos;
      trunc = T;
      continue;
    }
    Rational c = 1;
    bool have_coeff = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      c = read_rational();
      have_coeff = true;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    Rational e = 0;
    if (pos < s.size() && s[pos] == 't') {
      ++pos;
      e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        e = read_exponent();
      }
    } else if (!have_coeff) {
      throw fail("expected a coefficient or t");
    }
    if (c != 0) out += PuiseuxTrunc::monomial(RingElem(ring, Rational(sign * c)), e);
  }
  if (trunc) {
    for (const auto& t : out.terms())
      if (t.exponent >= *trunc) throw fail("term at or beyond the truncation order");
    out += PuiseuxTrunc::zero_up_to(ring, *trunc);
  }
  return out;
}

// One matrix row per non-empty line, entries separated by ',' or ';'.
inline ValMatrix parse_matrix(std::istream& in) {
  std::vector<std::vector<PuiseuxTrunc>> rows;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<PuiseuxTrunc> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, line.find(';') != std::string::npos ? ';' : ',')) row.push_back(parse_series(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidArgument("matrix file has no rows");
  return ValMatrix(CoeffRing::rationals(), std::move(rows));
}

inline json to_json(const ConeCertificate& c) {
  json j = std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, TypeIData>) {
          return {{"type", "I"}, {"left", d.left}, {"right", d.right}};
        } else if constexpr (std::is_same_v<T, TypeIIData>) {
          json k{{"type", "II"}, {"cell", d.cell.idx}};
          if (d.affine)
            k["affine"] = {{"base", d.affine->base.idx}, {"scale", d.affine->scale}, {"shift", d.affine->shift}};
          return k;
        } else {
          return {{"type", "III"}, {"sigma", d.sigma}, {"g", d.g}, {"d", d.d}, {"tie", d.tie}};
        }
      },
      c.data);
  j["subdivision"] = c.subdivision;
  j["interior"] = c.interior;
  j["description"] = c.describe();
  return j;
}

inline ConeCertificate certificate_from_json(const json& j) {
  ConeCertificate c;
  const std::string type = j.at("type").get<std::string>();
  if (type == "I") {
    c.data = TypeIData{j.at("left").get<std::array<int, 3>>(), j.at("right").get<std::array<int, 3>>()};
  } else if (type == "II") {
    TypeIIData d{IndexSet4(j.at("cell").get<std::array<int, 4>>()), std::nullopt};
    if (j.contains("affine")) {
      const auto& a = j.at("affine");
      d.affine = AffineExceptional{IndexSet4(a.at("base").get<std::array<int, 4>>()), a.at("scale").get<int>(),
                                   a.at("shift").get<int>()};
    }
    c.data = d;
  } else if (type == "III") {
    c.data = TypeIIIData{j.at("sigma").get<std::array<int, 3>>(), j.at("g").get<int>(), j.at("d").get<int>(),
                         j.at("tie").get<std::array<int, 2>>()};
  } else {
    throw InvalidArgument("unknown cone type '" + type + "'");
  }
  c.subdivision = j.at("subdivision").get<Subdivision>();
  c.interior = j.value("interior", false);
  return c;
}

inline json to_json(const ClassificationResult& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  json j{{"member", r.member}, {"certificates", certs}};
  if (r.refusal_reason) j["refusal_reason"] = *r.refusal_reason;
  return j;
}

inline json to_json(const Witness& w) {
  json coeffs = json::array();
  for (const auto& c : w.coefficients) coeffs.push_back(to_json(c));
  json j{{"ring", to_json(*w.ring)},
         {"b", to_json(w.b)},
         {"coefficients", coeffs},
         {"transform", {{"alpha", to_json(w.transform.alpha)}, {"shift", to_json(w.transform.shift)}}},
         {"type", to_string(w.type)},
         {"J", w.J},
         {"v", to_json(w.v)},
         {"h", w.h},
         {"m", w.m},
         {"truncation", to_json(w.truncation)}};
  j["i5"] = w.i5 ? json(*w.i5) : json(nullptr);
  j["certificate"] = w.certificate ? to_json(*w.certificate) : json(nullptr);
  return j;
}

inline ConeType cone_type_from_string(const std::string& s) {
  if (s == "I") return ConeType::I;
  if (s == "II") return ConeType::II;
  if (s == "III") return ConeType::III;
  throw InvalidArgument("unknown cone type '" + s + "'");
}

inline Witness witness_from_json(const json& j) {
  Witness w;
  w.ring = ring_from_json(j.at("ring"));
  w.b = series_from_json(j.at("b"), w.ring);
  for (const auto& c : j.at("coefficients")) w.coefficients.push_back(series_from_json(c, w.ring));
  if (j.contains("transform")) {
    w.transform.alpha = rational_from_json(j.at("transform").at("alpha"));
    w.transform.shift = rational_from_json(j.at("transform").at("shift"));
  }
  if (j.contains("type")) w.type = cone_type_from_string(j.at("type").get<std::string>());
  if (j.contains("J")) w.J = j.at("J").get<std::array<int, 4>>();
  if (j.contains("i5") && !j.at("i5").is_null()) w.i5 = j.at("i5").get<int>();
  if (j.contains("v")) w.v = rational_from_json(j.at("v"));
  w.h = j.value("h", 1);
  w.m = j.value("m", 1);
  if (j.contains("truncation")) w.truncation = rational_from_json(j.at("truncation"));
  if (j.contains("certificate") && !j.at("certificate").is_null())
    w.certificate = certificate_from_json(j.at("certificate"));
  return w;
}

inline json to_json(const VerificationReport& r) {
  return {{"ok", r.ok()},
          {"coefficient_count", r.coefficient_count},
          {"valuations", r.valuations},
          {"node_distinct", r.node_distinct},
          {"f_at_1", r.f_at_1},
          {"df_at_1", r.df_at_1},
          {"f_at_b", r.f_at_b},
          {"df_at_b", r.df_at_b},
          {"diagram", r.diagram},
          {"failures", r.failures}};
}

// SVG of the lifted points (i, w_i) and the lower hull. Marked points are
// stars, the two hidden-tie points of a type III certificate are joined by
// a dashed segment.
inline std::string diagram_svg(const WeightVector& w, const std::optional<ConeCertificate>& cert = std::nullopt) {
  const int n = w.n();
  double lo = w[0].get_d(), hi = lo;
  for (const auto& x : w.entries()) {
    lo = std::min(lo, x.get_d());
    hi = std::max(hi, x.get_d());
  }
  if (hi - lo < 1) hi = lo + 1;
  const double margin = 40, width = 60.0 * n + 2 * margin, height = 320;
  auto X = [&](double i) { return margin + 60.0 * i; };
  auto Y = [&](double v) { return height - margin - (v - lo) / (hi - lo) * (height - 2 * margin); };
  MarkedSubdivision pi = newton_diagram(w);
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << X(0) << "\" y1=\"" << height - margin / 2 << "\" x2=\"" << X(n) << "\" y2=\""
     << height - margin / 2 << "\" stroke=\"#888\"/>\n";
  for (const auto& c : pi.cells)
    os << "<line x1=\"" << X(c.left()) << "\" y1=\"" << Y(w[c.left()].get_d()) << "\" x2=\"" << X(c.right())
       << "\" y2=\"" << Y(w[c.right()].get_d()) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  if (cert)
    if (const auto* t = std::get_if<TypeIIIData>(&cert->data))
      os << "<line x1=\"" << X(t->tie[0]) << "\" y1=\"" << Y(w[t->tie[0]].get_d()) << "\" x2=\"" << X(t->tie[1])
         << "\" y2=\"" << Y(w[t->tie[1]].get_d()) << "\" stroke=\"#c33\" stroke-dasharray=\"6,4\"/>\n";
  std::vector<bool> marked(static_cast<std::size_t>(n + 1), false);
  for (const auto& c : pi.cells)
    for (int j : c.marked()) marked[static_cast<std::size_t>(j)] = true;
  for (int i = 0; i <= n; ++i) {
    double x = X(i), y = Y(w[i].get_d());
    if (marked[static_cast<std::size_t>(i)]) {
      os << "<polygon points=\"";
      for (int k = 0; k < 10; ++k) {
        double r = k % 2 ? 3.5 : 8.0, a = -std::numbers::pi / 2 + k * std::numbers::pi / 5;
        os << (k ? " " : "") << x + r * std::cos(a) << "," << y + r * std::sin(a);
      }
      os << "\" fill=\"black\"/>\n";
    } else {
      os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"black\"/>\n";
    }
    os << "<text x=\"" << x << "\" y=\"" << height - margin / 2 + 16 << "\" font-size=\"12\" text-anchor=\"middle\">"
       << i << "</text>\n";
    os << "<text x=\"" << x + 8 << "\" y=\"" << y - 8 << "\" font-size=\"11\" fill=\"#555\">" << w[i].get_str()
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tropsev::io
