#include "modcoh/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>

#include "modcoh/coherence.hpp"
#include "modcoh/identities.hpp"
#include "modcoh/json_io.hpp"

namespace modcoh::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNotEqual = 1;
constexpr int kUnknown = 2;
constexpr int kInputError = 3;

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

const char* status_label(PathStatus s) {
  switch (s) {
    case PathStatus::Coherent: return "COHERENT";
    case PathStatus::OracleEqual: return "EQUAL";
    case PathStatus::NotEqual: return "NOT_EQUAL";
  }
  return "?";
}

int cmd_eval(const std::string& text, bool json, std::optional<Nat> table,
             std::ostream& out) {
  TermPtr t = parse_term(text);
  ModularBijection f = eval(t);
  if (json) {
    out << to_json(f).dump(2) << "\n";
    return kOk;
  }
  out << pretty(f);
  if (table) {
    for (Nat n = 0; n < *table; ++n)
      out << "f(" << n << ") = " << apply(f, n) << "\n";
  }
  return kOk;
}

int cmd_apply(const std::string& text, Nat n, bool json, std::ostream& out) {
  Nat result = apply(eval(parse_term(text)), n);
  if (json)
    out << nlohmann::ordered_json{{"result", result}}.dump() << "\n";
  else
    out << result << "\n";
  return kOk;
}

int cmd_equal(const std::string& t1, const std::string& t2,
              const std::string& mode, bool json, std::ostream& out,
              std::ostream& err) {
  auto start = Clock::now();
  TermPtr a = parse_term(t1);
  TermPtr b = parse_term(t2);

  std::string verdict, method, reason;
  std::optional<Nat> witness;
  int code = kOk;

  CoherenceResult c;
  if (mode != "oracle") c = coherence_equal(a, b);
  if (mode != "oracle" && c.yes) {
    verdict = "equal";
    method = "coherence";
  } else if (mode == "coherence") {
    verdict = "unknown";
    reason = c.reason;
    code = kUnknown;
  } else {
    EqualityResult eq = equal(eval(a), eval(b));
    method = "oracle";
    if (mode == "both") reason = c.reason;
    if (eq.equal) {
      verdict = "equal";
    } else {
      verdict = "not-equal";
      witness = eq.witness;
      code = kNotEqual;
    }
  }

  if (json) {
    nlohmann::ordered_json j{{"verdict", verdict}};
    if (!method.empty()) j["method"] = method;
    if (witness) j["witness"] = *witness;
    if (!reason.empty()) j["reason"] = reason;
    out << j.dump() << "\n";
  } else if (verdict == "equal") {
    out << "equal (" << method << ")\n";
  } else if (verdict == "unknown") {
    out << "unknown: " << reason << "\n";
  } else {
    out << "not equal: least difference at n = " << *witness << "\n";
  }
  err << "modcoh: equal finished in " << ms_since(start) << " ms\n";
  return code;
}

int cmd_lift(const std::string& text, bool json, std::ostream& out,
             std::ostream& err) {
  TypingResult r = infer_typing(parse_term(text));
  if (const auto* e = std::get_if<TypingError>(&r)) {
    err << "lift error: " << e->detail << "\n";
    return kInputError;
  }
  const Typing& ty = std::get<Typing>(r);
  if (json)
    out << nlohmann::ordered_json{{"source", to_string(ty.source)},
                                  {"target", to_string(ty.target)}}
               .dump()
        << "\n";
  else
    out << to_string(ty) << "\n";
  return kOk;
}

int cmd_gen(unsigned rank, std::optional<std::size_t> limit,
            const std::string& out_path, std::ostream& out,
            std::ostream& err) {
  auto start = Clock::now();
  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open \"" + out_path + "\"");
    sink = &file;
  }
  std::size_t count = 0;
  generate_identities(rank, limit, [&](const VerifiedIdentity& i) {
    *sink << to_json(i).dump() << "\n";
    ++count;
  });
  err << "modcoh: gen emitted " << count << " identities at rank " << rank
      << " in " << ms_since(start) << " ms\n";
  return kOk;
}

int cmd_verify_diagram(const std::string& path, std::size_t bound, bool json,
                       std::ostream& out, std::ostream& err) {
  auto start = Clock::now();
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open \"" + path + "\"");
  nlohmann::json j = nlohmann::json::parse(file);
  Diagram d = diagram_from_json(j);
  DiagramReport report = verify_diagram(d, bound);
  if (json) {
    out << to_json(report).dump(2) << "\n";
  } else {
    out << (report.commutes ? "diagram commutes" : "diagram does not commute")
        << " (" << report.pairs.size() << " parallel path pair"
        << (report.pairs.size() == 1 ? "" : "s") << ")\n";
    if (report.truncated)
      out << "note: some walks hit the path length bound\n";
    for (const PathPairReport& p : report.pairs) {
      out << "[" << status_label(p.status) << "] " << p.from << " -> " << p.to
          << "\n    " << p.term_a << "\n    " << p.term_b << "\n";
      if (p.witness) out << "    least difference at n = " << *p.witness << "\n";
      if (!p.note.empty()) out << "    lift: " << p.note << "\n";
    }
  }
  err << "modcoh: verify-diagram finished in " << ms_since(start) << " ms\n";
  return report.commutes ? kOk : kNotEqual;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact piecewise-affine bijections of the naturals and"
               " coherence-based equality of rebracketing terms"};
  app.require_subcommand(1);

  std::string term_text, term2_text, mode = "both", out_path, diagram_path;
  bool json = false;
  std::optional<Nat> table;
  Nat apply_n = 0;
  unsigned rank = 0;
  std::optional<std::size_t> limit;
  std::size_t path_bound = 0;

  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a term to its case table");
  eval_cmd->add_option("term", term_text, "Term, e.g. \"tau . (id * sigma)\"")
      ->required();
  eval_cmd->add_flag("--json", json, "Emit the bijection as JSON");
  eval_cmd->add_option("--table", table, "Also print f(0..N-1)");

  CLI::App* apply_cmd = app.add_subcommand("apply", "Apply a term to a number");
  apply_cmd->add_option("term", term_text, "Term")->required();
  apply_cmd->add_option("n", apply_n, "Input number")->required();
  apply_cmd->add_flag("--json", json, "Emit JSON");

  CLI::App* equal_cmd =
      app.add_subcommand("equal", "Decide whether two terms denote the same bijection");
  equal_cmd->add_option("t1", term_text, "First term")->required();
  equal_cmd->add_option("t2", term2_text, "Second term")->required();
  equal_cmd->add_option("--mode", mode, "oracle, coherence, or both")
      ->check(CLI::IsMember({"oracle", "coherence", "both"}));
  equal_cmd->add_flag("--json", json, "Emit JSON");

  CLI::App* lift_cmd =
      app.add_subcommand("lift", "Infer the principal tree typing of a term");
  lift_cmd->add_option("term", term_text, "Term")->required();
  lift_cmd->add_flag("--json", json, "Emit JSON");

  CLI::App* gen_cmd = app.add_subcommand(
      "gen", "Generate machine-verified identities for a tree rank");
  gen_cmd->add_option("--rank", rank, "Tree rank (2..10)")->required();
  gen_cmd->add_option("--limit", limit, "Stop after this many identities");
  gen_cmd->add_option("--out", out_path, "Write JSON lines to this file");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify-diagram", "Check every parallel path pair of a diagram");
  verify_cmd->add_option("file", diagram_path, "Diagram JSON file")->required();
  verify_cmd->add_option("--path-bound", path_bound,
                         "Walk length bound (default: edge count)");
  verify_cmd->add_flag("--json", json, "Emit the report as JSON");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(term_text, json, table, out);
    if (apply_cmd->parsed()) return cmd_apply(term_text, apply_n, json, out);
    if (equal_cmd->parsed())
      return cmd_equal(term_text, term2_text, mode, json, out, err);
    if (lift_cmd->parsed()) return cmd_lift(term_text, json, out, err);
    if (gen_cmd->parsed()) return cmd_gen(rank, limit, out_path, out, err);
    if (verify_cmd->parsed())
      return cmd_verify_diagram(diagram_path, path_bound, json, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace modcoh::cli
