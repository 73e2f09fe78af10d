#pragma once

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tropsev/io.hpp"

namespace tropsev::cli {

using io::json;

enum Exit { kOk = 0, kRefused = 1, kInputError = 2 };

namespace detail {

inline json envelope(const std::string& command) { return {{"schema", io::kSchema}, {"command", command}}; }

inline WeightVector read_weight(const std::string& text, int n) {
  WeightVector w = WeightVector::parse(text);
  if (n >= 0 && w.n() != n) throw InvalidArgument("weight has " + std::to_string(w.n() + 1) + " entries, expected n+1 = " +
                                                  std::to_string(n + 1));
  return w;
}

inline std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline int lowest_degree(const IntPoly& p) {
  for (int i = 0; i <= p.degree(); ++i)
    if (p.coeff(i) != 0) return i;
  return -1;
}

// Runs f(i) for i in [0, count) on up to `threads` workers.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& f) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline std::optional<ConeType> type_filter(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return io::cone_type_from_string(s);
}

}  // namespace detail

struct Options {
  int threads = 1;
  int n = -1;
  std::string w;
  std::string batch;
  std::string trunc;
  std::string type;
  std::string file;
  std::string J;
  std::string matrix;
  std::string out;
  std::size_t budget = 2000000;
  bool with_h = false;
  bool list_circuits = false;
  int indent = 2;
};

inline int cmd_classify(const Options& o, std::ostream& out) {
  json j = detail::envelope("classify");
  if (!o.batch.empty()) {
    std::istringstream in(detail::read_all(o.batch));
    std::vector<WeightVector> ws;
    for (std::string line; std::getline(in, line);)
      if (line.find_first_not_of(" \t\r") != std::string::npos) ws.push_back(detail::read_weight(line, o.n));
    std::vector<json> results(ws.size());
    detail::parallel_for(ws.size(), o.threads, [&](std::size_t i) {
      results[i] = io::to_json(classify(ws[i]));
      results[i]["w"] = io::to_json(ws[i].entries());
    });
    bool all = true;
    for (const auto& r : results) all = all && r["member"].get<bool>();
    j["results"] = results;
    out << j.dump(o.indent) << "\n";
    return all ? kOk : kRefused;
  }
  WeightVector w = detail::read_weight(o.w, o.n);
  ClassificationResult r = classify(w);
  j["w"] = io::to_json(w.entries());
  j.update(io::to_json(r));
  out << j.dump(o.indent) << "\n";
  return r.member ? kOk : kRefused;
}

inline int cmd_witness(const Options& o, std::ostream& out) {
  WeightVector w = detail::read_weight(o.w, o.n);
  Rational floor = o.trunc.empty() ? Rational(0) : parse_rational(o.trunc);
  auto want = detail::type_filter(o.type);
  json j = detail::envelope("witness");
  j["w"] = io::to_json(w.entries());
  ClassificationResult r = classify(w);
  if (!r.member) {
    j["member"] = false;
    j["refusal_reason"] = r.refusal_reason.value_or("");
    out << j.dump(o.indent) << "\n";
    return kRefused;
  }
  std::optional<Witness> wit;
  std::string why = "weight lies on a cone boundary";
  for (const auto& c : r.certificates) {
    if (!c.interior || (want && c.type() != *want)) continue;
    try {
      wit = construct_witness(w, c, floor);
      break;
    } catch (const NonGenericWeight& e) {
      why = e.what();
    }
  }
  j["member"] = true;
  if (!wit) {
    if (want) why = "no interior certificate of type " + o.type + " succeeded: " + why;
    j["error"] = why;
    out << j.dump(o.indent) << "\n";
    return kRefused;
  }
  VerificationReport rep = verify_witness(w, *wit);
  j["witness"] = io::to_json(*wit);
  j["verification"] = io::to_json(rep);
  out << j.dump(o.indent) << "\n";
  return rep.ok() ? kOk : kRefused;
}

// Accepts the output of `witness` unchanged, or a bare witness object with
// the weight under "w".
inline int cmd_verify(const Options& o, std::ostream& out) {
  json in;
  try {
    in = json::parse(detail::read_all(o.file));
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("witness file is not valid JSON: ") + e.what());
  }
  const json& body = in.contains("witness") ? in.at("witness") : in;
  Witness wit;
  WeightVector w;
  try {
    wit = io::witness_from_json(body);
    if (!o.w.empty())
      w = detail::read_weight(o.w, o.n);
    else if (in.contains("w"))
      w = WeightVector(io::rationals_from_json(in.at("w")));
    else
      throw InvalidArgument("no weight given: pass --w or include \"w\"");
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed witness: ") + e.what());
  }
  VerificationReport rep = verify_witness(w, wit);
  json j = detail::envelope("verify");
  j["w"] = io::to_json(w.entries());
  j["verification"] = io::to_json(rep);
  out << j.dump(o.indent) << "\n";
  return rep.ok() ? kOk : kRefused;
}

inline int cmd_minors(const Options& o, std::ostream& out) {
  auto v = parse_rational_list(o.J);
  if (v.size() != 4) throw InvalidArgument("--J needs four indices");
  std::array<int, 4> a{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (v[i].get_den() != 1 || !v[i].get_num().fits_sint_p()) throw InvalidArgument("--J entries must be integers");
    a[i] = static_cast<int>(v[i].get_num().get_si());
  }
  IndexSet4 J = IndexSet4::sorted_from(a);
  if (J[3] > 200) throw InvalidArgument("--J entries must be at most 200");
  IntPoly p = minor_poly(J).poly;
  json j = detail::envelope("minors");
  j["J"] = J.idx;
  j["poly"] = p.to_string();
  j["degree"] = p.degree();
  j["order"] = detail::lowest_degree(p);
  j["gap_gcds"] = gap_gcds(J);
  j["exceptional_translation"] = is_exceptional_translation(J);
  if (auto aff = is_exceptional_affine(J))
    j["exceptional_affine"] = {{"base", aff->base.idx}, {"scale", aff->scale}, {"shift", aff->shift}};
  else
    j["exceptional_affine"] = nullptr;
  out << j.dump(o.indent) << "\n";
  return kOk;
}

inline int cmd_cones(const Options& o, std::ostream& out) {
  auto want = detail::type_filter(o.type);
  json j = detail::envelope("cones");
  j["n"] = o.n;
  json cones = json::array();
  std::map<std::string, int> by_type;
  std::size_t total = for_each_cone(
      o.n,
      [&](const ConeCertificate& c) {
        by_type[to_string(c.type())] += 1;
        if (want && c.type() != *want) return;
        json cj = io::to_json(c);
        if (o.with_h) {
          HDescription h = h_description(c, o.n);
          cj["equalities"] = h.equalities;
          cj["inequalities"] = h.inequalities;
        }
        cones.push_back(std::move(cj));
      },
      o.budget);
  j["count"] = total;
  j["by_type"] = by_type;
  j["cones"] = cones;
  out << j.dump(o.indent) << "\n";
  return kOk;
}

inline int cmd_tropkernel(const Options& o, std::ostream& out) {
  std::istringstream in(detail::read_all(o.matrix));
  ValMatrix M = io::parse_matrix(in);
  std::vector<Rational> w = parse_rational_list(o.w);
  TropKernelResult r = in_trop_kernel(M, w);
  bool via = in_trop_kernel_via_circuits(M, w);
  json j = detail::envelope("tropkernel");
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  j["w"] = io::to_json(w);
  j["member"] = r.member;
  j["member_via_circuits"] = via;
  if (!r.member) {
    j["violating_J"] = r.violating_J;
    j["minimizer"] = *r.minimizer;
  }
  if (o.list_circuits) {
    json cs = json::array();
    for (const auto& c : circuits(M)) {
      json v = json::array();
      for (const auto& e : c.vector) v.push_back(e.to_string());
      cs.push_back({{"support", c.support}, {"vector", v}});
    }
    j["circuits"] = cs;
  }
  if (r.member != via) throw std::logic_error("minor and circuit tests disagree");
  out << j.dump(o.indent) << "\n";
  return r.member ? kOk : kRefused;
}

inline int cmd_diagram(const Options& o, std::ostream& out) {
  WeightVector w = detail::read_weight(o.w, o.n);
  auto want = detail::type_filter(o.type);
  std::optional<ConeCertificate> cert;
  for (const auto& c : classify(w).certificates)
    if (!want || c.type() == *want) {
      cert = c;
      break;
    }
  std::string svg = io::diagram_svg(w, cert);
  if (o.out.empty() || o.out == "-") {
    out << svg;
  } else {
    std::ofstream f(o.out);
    if (!f) throw InvalidArgument("cannot write '" + o.out + "'");
    f << svg;
  }
  return kOk;
}

// Parses argv and dispatches; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact membership, witnesses and cone enumeration for the tropical Severi variety of binary forms"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Worker threads for batch work")->check(CLI::Range(1, 256));
  app.add_option("--indent", o.indent, "JSON indentation (-1 for compact)");

  auto* classify_cmd = app.add_subcommand("classify", "Decide membership and list cone certificates");
  classify_cmd->add_option("--w", o.w, "Weight vector, comma-separated rationals");
  classify_cmd->add_option("--n", o.n, "Degree; checks the weight length");
  classify_cmd->add_option("--batch", o.batch, "File with one weight vector per line ('-' for stdin)");

  auto* witness_cmd = app.add_subcommand("witness", "Construct and verify a polynomial with two double roots");
  witness_cmd->add_option("--w", o.w, "Weight vector")->required();
  witness_cmd->add_option("--n", o.n, "Degree; checks the weight length");
  witness_cmd->add_option("--trunc", o.trunc, "Minimum working truncation order");
  witness_cmd->add_option("--type", o.type, "Use an interior certificate of this type (I, II, III)");

  auto* verify_cmd = app.add_subcommand("verify", "Check a witness produced by the witness command");
  verify_cmd->add_option("--file", o.file, "Witness JSON ('-' for stdin)")->required();
  verify_cmd->add_option("--w", o.w, "Weight vector; defaults to the one stored in the file");
  verify_cmd->add_option("--n", o.n, "Degree; checks the weight length");

  auto* minors_cmd = app.add_subcommand("minors", "Closed-form 4x4 minor of the node-condition matrix");
  minors_cmd->add_option("--J", o.J, "Four column indices")->required();

  auto* cones_cmd = app.add_subcommand("cones", "Enumerate the maximal cones for degree n");
  cones_cmd->add_option("--n", o.n, "Degree, 4..12")->required();
  cones_cmd->add_option("--budget", o.budget, "Abort after this many enumeration steps");
  cones_cmd->add_option("--type", o.type, "Only list cones of this type");
  cones_cmd->add_flag("--hrep", o.with_h, "Include H-descriptions");

  auto* kernel_cmd = app.add_subcommand("tropkernel", "Tropical kernel membership for a series matrix");
  kernel_cmd->add_option("--matrix", o.matrix, "Matrix file, one row per line ('-' for stdin)")->required();
  kernel_cmd->add_option("--w", o.w, "Weight vector of length cols")->required();
  kernel_cmd->add_flag("--circuits", o.list_circuits, "List the circuits");

  auto* diagram_cmd = app.add_subcommand("diagram", "SVG of the Newton diagram");
  diagram_cmd->add_option("--w", o.w, "Weight vector")->required();
  diagram_cmd->add_option("--n", o.n, "Degree; checks the weight length");
  diagram_cmd->add_option("--type", o.type, "Draw the certificate of this type");
  diagram_cmd->add_option("--out", o.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  auto fail = [&](const std::string& kind, const std::string& what, int code) {
    err << "error: " << what << "\n";
    json j{{"schema", io::kSchema}, {"error", what}, {"kind", kind}};
    out << j.dump(o.indent) << "\n";
    return code;
  };
  try {
    if (*classify_cmd) {
      if (o.w.empty() == o.batch.empty()) throw InvalidArgument("pass exactly one of --w and --batch");
      return cmd_classify(o, out);
    }
    if (*witness_cmd) return cmd_witness(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
    if (*minors_cmd) return cmd_minors(o, out);
    if (*cones_cmd) return cmd_cones(o, out);
    if (*kernel_cmd) return cmd_tropkernel(o, out);
    if (*diagram_cmd) return cmd_diagram(o, out);
  } catch (const InvalidArgument& e) {
    return fail("input", e.what(), kInputError);
  } catch (const BudgetExceeded& e) {
    return fail("budget", e.what(), kRefused);
  } catch (const PrecisionExhausted& e) {
    return fail("precision", e.what(), kRefused);
  } catch (const Error& e) {
    return fail("domain", e.what(), kRefused);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kInputError);
  }
  return kInputError;
}

}  // namespace tropsev::cli
