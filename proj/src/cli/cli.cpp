#include "capgrp/cli.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capgrp/arith.hpp"
#include "capgrp/capability.hpp"
#include "capgrp/closure.hpp"
#include "capgrp/json_io.hpp"
#include "capgrp/verify.hpp"

namespace capgrp {

namespace {

// W(n) grows like n^3 and the block matrix of Phi like n^5; past this the
// dense representation stops being a desk-sized computation.
constexpr int kMaxN = 20;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string output;
  std::string format;
  std::uint64_t seed = 1;
  Count budget = 10'000'000;
  unsigned threads = 0;
  std::optional<std::int64_t> p;
  std::optional<int> n;
};

struct Result {
  Json json;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::string text;  // empty: derived from json
  int code = kExitOk;
};

std::string str(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

// ---- input

std::string read_input(const Options& o, std::istream& in) {
  if (o.input.empty()) throw UsageError("--input is required for this command");
  if (o.input == "-") return {std::istreambuf_iterator<char>(in), {}};
  const auto first = o.input.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && o.input[first] == '{') return o.input;
  std::ifstream f(o.input, std::ios::binary);
  if (!f) throw UsageError("cannot read input file " + o.input);
  return {std::istreambuf_iterator<char>(f), {}};
}

struct Instance {
  PrimeModulus f;
  int n;
  std::optional<Json> relators;
  std::optional<Json> generators;
};

std::int64_t int_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw UsageError(std::string("missing field \"") + key + "\"");
  if (!j[key].is_number_integer()) throw UsageError(std::string("field \"") + key + "\" must be an integer");
  return j[key].get<std::int64_t>();
}

Instance load_instance(const Options& o, std::istream& in) {
  Json j;
  try {
    j = Json::parse(read_input(o, in));
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("input is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("input must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "p" && key != "n" && key != "relators" && key != "generators")
      throw UsageError("unknown field \"" + key + "\"");
  const auto p = int_field(j, "p");
  const auto n = int_field(j, "n");
  if (n < 0 || n > kMaxN) throw UsageError("n must lie in 0.." + std::to_string(kMaxN));
  if (o.p && *o.p != p) throw UsageError("--p disagrees with the input");
  if (o.n && *o.n != n) throw UsageError("--n disagrees with the input");
  if (j.contains("relators") == j.contains("generators"))
    throw UsageError("input needs exactly one of \"relators\" or \"generators\"");
  Instance inst{PrimeModulus(p), static_cast<int>(n), std::nullopt, std::nullopt};
  if (j.contains("relators")) {
    if (!j["relators"].is_array()) throw UsageError("\"relators\" must be a list");
    inst.relators = j["relators"];
  } else {
    if (!j["generators"].is_array()) throw UsageError("\"generators\" must be a list");
    inst.generators = j["generators"];
  }
  return inst;
}

GroupPresentation to_presentation(const Instance& inst) {
  GroupPresentation pres{inst.f, inst.n, {}};
  for (const auto& r : *inst.relators) {
    if (!r.is_array()) throw UsageError("each relator must be a list of [j, i, e] triples");
    Relator rel;
    for (const auto& t : r) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
          !t[2].is_number_integer())
        throw UsageError("expected a [j, i, e] triple of integers, got " + t.dump());
      rel.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<std::int64_t>()});
    }
    pres.relators.push_back(std::move(rel));
  }
  return pres;
}

// X inside V(n); requires n >= 2.
Subspace to_subspace(const WedgeSpace& ws, const Instance& inst) {
  if (inst.relators) return presentation_to_subspace(to_presentation(inst));
  return subspace_from_json(ws, *inst.generators);
}

void require_n2(const Instance& inst) {
  if (inst.n < 2) throw UsageError("this command needs n >= 2");
}

// ---- commands

Result cmd_capable(const Options& o, std::istream& in) {
  const auto inst = load_instance(o, in);
  CapabilityVerdict v;
  if (inst.n < 2) {
    if (inst.generators && !inst.generators->empty())
      throw UsageError("V(n) is zero for n < 2, so no generators are allowed");
    GroupPresentation pres = inst.relators ? to_presentation(inst) : GroupPresentation{inst.f, inst.n, {}};
    v = is_capable(pres);
  } else {
    const WedgeSpace ws(inst.n, inst.f);
    v = verdict_for_subspace(ws, to_subspace(ws, inst), o.threads);
  }
  Result r;
  r.json = verdict_to_json(inst.f, inst.n, v);
  r.csv_header = {"capable", "reason", "p", "n", "dim_x", "dim_star", "overlap_dim", "central_points"};
  r.csv_rows.push_back({str(r.json["capable"]), str(r.json["reason"]), str(r.json["p"]), str(r.json["n"]),
                        str(r.json["dim_x"]), str(r.json["dim_star"]), str(r.json["overlap_dim"]),
                        std::to_string(v.central_points.size())});
  return r;
}

Result cmd_closure(const Options& o, std::istream& in) {
  const auto inst = load_instance(o, in);
  require_n2(inst);
  const WedgeSpace ws(inst.n, inst.f);
  const auto rep = analyze(ws, to_subspace(ws, inst));
  Result r;
  r.json["p"] = inst.f.value();
  r.json["n"] = inst.n;
  r.json.update(closure_report_to_json(ws, rep));
  r.csv_header = {"p", "n", "dim_x", "dim_star", "dim_closure", "closed", "overlap_dim"};
  r.csv_rows.push_back({str(r.json["p"]), str(r.json["n"]), str(r.json["dim_x"]), str(r.json["dim_star"]),
                        str(r.json["dim_closure"]), str(r.json["closed"]), str(r.json["overlap_dim"])});
  return r;
}

Result cmd_classify_n4(const Options& o, std::istream& in) {
  const auto inst = load_instance(o, in);
  if (inst.n != 4) throw UsageError("classify-n4 needs n = 4");
  const WedgeSpace ws(4, inst.f);
  const auto x = to_subspace(ws, inst);
  if (x.dim() != 5) throw UsageError("classify-n4 needs a 5-dimensional subspace, got " + std::to_string(x.dim()));
  const auto c = classify_n4(ws, x);
  Result r;
  r.json["p"] = inst.f.value();
  r.json["n"] = 4;
  r.json["psi_route"] = c.psi_route;
  r.json["upsilon_route"] = c.upsilon_route;
  r.json["overlap_route"] = c.overlap_route;
  r.json["closed"] = c.closed;
  r.json["consistent"] = c.consistent();
  r.json["psi_witness"] = c.psi_witness ? point_to_json(*c.psi_witness, inst.f) : Json(nullptr);
  r.json["upsilon_witness"] = c.upsilon_witness ? point_to_json(*c.upsilon_witness, inst.f) : Json(nullptr);
  r.csv_header = {"psi_route", "upsilon_route", "overlap_route", "closed", "consistent"};
  r.csv_rows.push_back({str(r.json["psi_route"]), str(r.json["upsilon_route"]), str(r.json["overlap_route"]),
                        str(r.json["closed"]), str(r.json["consistent"])});
  if (!c.consistent()) r.code = kExitVerifyFailed;
  return r;
}

int need_n(const Options& o, int lo) {
  if (!o.n) throw UsageError("--n is required for this command");
  if (*o.n < lo || *o.n > kMaxN)
    throw UsageError("--n must lie in " + std::to_string(lo) + ".." + std::to_string(kMaxN));
  return *o.n;
}

Result cmd_kerphi(const Options& o) {
  const int n = need_n(o, 1);
  const PrimeModulus f(o.p.value_or(3));
  const WedgeSpace ws(n, f);
  Result r;
  r.json["p"] = f.value();
  r.json["n"] = n;
  r.json["dim"] = binom(static_cast<Count>(n), 3);
  Json basis = Json::array();
  r.csv_header = {"a", "b", "c", "component", "j", "i", "coefficient"};
  std::size_t idx = 0;
  const auto elems = ker_phi_basis(ws);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) {
        const auto& e = elems[idx++];
        basis.push_back({{"abc", {a, b, c}}, {"components", ker_element_to_json(ws, e)}});
        for (std::size_t u = 0; u < e.components.size(); ++u)
          for (const auto& t : vector_to_json(ws, e.components[u]))
            r.csv_rows.push_back({std::to_string(a), std::to_string(b), std::to_string(c), std::to_string(u + 1),
                                  str(t[0]), str(t[1]), str(t[2])});
      }
  r.json["basis"] = basis;
  return r;
}

Result cmd_fval(Count m) {
  const auto dec = TriangularDecomposition::canonical(m);
  Result r;
  r.json = {{"m", m}, {"f", f_of(m)}, {"T", dec.T}, {"s", dec.s}};
  r.csv_header = {"m", "f"};
  r.csv_rows.push_back({std::to_string(m), std::to_string(f_of(m))});
  r.text = std::to_string(f_of(m)) + "\n";
  return r;
}

Result cmd_rval(Count d) {
  Result r;
  r.json = {{"d", d}, {"r", r_of(d)}};
  r.csv_header = {"d", "r"};
  r.csv_rows.push_back({std::to_string(d), std::to_string(r_of(d))});
  r.text = std::to_string(r_of(d)) + "\n";
  return r;
}

Result cmd_bounds(const Options& o, Count m) {
  const auto n = static_cast<Count>(need_n(o, 1));
  const auto b = bounds_dim_star(n, m);
  Result r;
  r.json = {{"n", n},
            {"m", m},
            {"lower", b.lower},
            {"upper", b.upper},
            {"sufficient_condition", m <= binom(n, 2) && sufficient_rank_condition(n, binom(n, 2) - m)}};
  r.csv_header = {"n", "m", "lower", "upper"};
  r.csv_rows.push_back({std::to_string(n), std::to_string(m), std::to_string(b.lower), std::to_string(b.upper)});
  return r;
}

Result cmd_table1() {
  Result r;
  r.json = Json::array();
  r.csv_header = {"m", "f_published", "f_computed", "match"};
  bool all = true;
  std::ostringstream text;
  text << "   m  published  computed  match\n";
  for (const auto& row : table1_rows()) {
    r.json.push_back({{"m", row.m}, {"f_published", row.published}, {"f_computed", row.computed}, {"match", row.match}});
    r.csv_rows.push_back({std::to_string(row.m), std::to_string(row.published), std::to_string(row.computed),
                          row.match ? "true" : "false"});
    text << (row.m < 10 ? "   " : "  ") << row.m << "  " << std::string(9 - std::to_string(row.published).size(), ' ')
         << row.published << "  " << std::string(8 - std::to_string(row.computed).size(), ' ') << row.computed
         << "  " << (row.match ? "yes" : "NO") << "\n";
    all = all && row.match;
  }
  r.text = text.str();
  if (!all) r.code = kExitVerifyFailed;
  return r;
}

Result cmd_verify(const Options& o, std::vector<std::string> suites, std::optional<Count> samples) {
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = suite_names();
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw UsageError("unknown suite: " + s);
  SuiteOptions so{o.seed, o.budget, o.threads, samples};
  Result r;
  r.json["seed"] = o.seed;
  r.json["budget"] = o.budget;
  Json reports = Json::array();
  bool passed = true;
  std::ostringstream text;
  r.csv_header = {"suite", "passed", "checks", "violations"};
  for (const auto& s : suites) {
    const auto rep = verify_suite(s, so);
    passed = passed && rep.passed;
    reports.push_back(rep.to_json());
    r.csv_rows.push_back({s, rep.passed ? "true" : "false", std::to_string(rep.checks), std::to_string(rep.violations)});
    text << (rep.passed ? "PASS " : "FAIL ") << s << " (" << rep.checks << " checks, " << rep.violations
         << " violations)\n";
    for (const auto& n : rep.notes) text << "  note: " << n << "\n";
    for (const auto& f : rep.failures) text << "  counterexample: " << f.dump() << "\n";
  }
  r.json["passed"] = passed;
  r.json["suites"] = reports;
  r.text = text.str();
  if (!passed) r.code = kExitVerifyFailed;
  return r;
}

// ---- output

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_text(const Json& j) {
  std::ostringstream out;
  for (const auto& [key, value] : j.items()) {
    if (value.is_array() && !value.empty() && value.front().is_array()) {
      out << key << ":\n";
      for (const auto& v : value) out << "  " << v.dump() << "\n";
    } else {
      out << key << ": " << str(value) << "\n";
    }
  }
  return out.str();
}

std::string render(const Result& r, const std::string& format) {
  if (format == "json") return r.json.dump(2) + "\n";
  if (format == "text") return r.text.empty() ? render_text(r.json) : r.text;
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
    out += "\n";
  };
  line(r.csv_header);
  for (const auto& row : r.csv_rows) line(row);
  return out;
}

void write_atomically(const std::string& path, const std::string& data) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write " + tmp.string());
    f << data;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw UsageError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw UsageError("cannot move output into place at " + path);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capability of class-two exponent-p groups via closed subspaces of V(n)", "capgrp"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--input", o.input, "Input JSON: a path, '-' for stdin, or an inline object starting with '{'");
  app.add_option("--output", o.output, "Write the result here (atomically) instead of stdout");
  app.add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", o.seed, "Seed for sampled checks");
  app.add_option("--budget", o.budget, "Largest population enumerated exhaustively");
  app.add_option("--threads", o.threads, "Worker threads, 0 for all cores");
  app.add_option("--p", o.p, "Odd prime");
  app.add_option("--n", o.n, "Number of generators");

  auto* capable = app.add_subcommand("capable", "Decide capability of a presentation or subspace");
  auto* closure_cmd = app.add_subcommand("closure", "Closure report of a subspace");
  auto* kerphi = app.add_subcommand("kerphi", "Basis v_(abc) of ker Phi for --n and --p");
  Count m = 0, d = 0, bm = 0;
  auto* fval = app.add_subcommand("fval", "f(m)");
  fval->add_option("m", m, "m")->required();
  auto* rval = app.add_subcommand("rval", "r(d)");
  rval->add_option("d", d, "d")->required();
  auto* bounds = app.add_subcommand("bounds", "Bounds on dim X* for dim X = m inside V(--n)");
  bounds->add_option("m", bm, "dim X")->required();
  auto* classify = app.add_subcommand("classify-n4", "Three closedness tests for a 5-dimensional X in V(4)");
  std::vector<std::string> suites;
  std::optional<Count> samples;
  auto* verify = app.add_subcommand("verify", "Run verification suites ('all' or names)");
  verify->add_option("suites", suites, "Suite names");
  verify->add_option("--samples", samples, "Override each suite's sample count");
  auto* table1 = app.add_subcommand("table1", "Table of f(m) for m = 3..50 against the published values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Result r;
    std::string default_format = "json";
    if (capable->parsed()) r = cmd_capable(o, in);
    else if (closure_cmd->parsed()) r = cmd_closure(o, in);
    else if (kerphi->parsed()) r = cmd_kerphi(o);
    else if (fval->parsed()) r = cmd_fval(m);
    else if (rval->parsed()) r = cmd_rval(d);
    else if (bounds->parsed()) r = cmd_bounds(o, bm);
    else if (classify->parsed()) r = cmd_classify_n4(o, in);
    else if (verify->parsed()) r = cmd_verify(o, suites, samples);
    else if (table1->parsed()) {
      r = cmd_table1();
      default_format = "csv";
    }
    const auto text = render(r, o.format.empty() ? default_format : o.format);
    if (o.output.empty()) out << text << std::flush;
    else write_atomically(o.output, text);
    return r.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
}

}  // namespace capgrp
