#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "modcoh/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = modcoh::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& contents)
      : path(name) {
    std::ofstream f(path);
    f << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

const char* kCommutingDiagram = R"js({
  "nodes": ["s", "t"],
  "edges": [
    {"from": "s", "to": "t", "term": "tau . tau"},
    {"from": "s", "to": "t", "term": "(tau * id) . tau . (id * tau)"}
  ]
})js";

const char* kBrokenDiagram = R"({
  "nodes": ["s", "t"],
  "edges": [
    {"from": "s", "to": "t", "term": "tau"},
    {"from": "s", "to": "t", "term": "id"}
  ]
})";

}  // namespace

TEST_CASE("apply prints the image") {
  Run r = cli({"apply", "tau", "7"});
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");
  Run j = cli({"apply", "tau", "7", "--json"});
  CHECK(j.out == "{\"result\":3}\n");
}

TEST_CASE("eval prints the case table") {
  Run r = cli({"eval", "sigma"});
  CHECK(r.code == 0);
  CHECK(r.out.find("n ≡ 0 (mod 2)") != std::string::npos);
  Run t = cli({"eval", "tau", "--table", "3"});
  CHECK(t.out.find("f(0) = 0") != std::string::npos);
  CHECK(t.out.find("f(1) = 2") != std::string::npos);
  CHECK(t.out.find("f(2) = 4") != std::string::npos);
  Run j = cli({"eval", "id", "--json"});
  nlohmann::json parsed = nlohmann::json::parse(j.out);
  CHECK(parsed.at("branches").size() == 1);
}

TEST_CASE("equal exit codes") {
  // Hexagon, oracle route.
  Run hex = cli({"equal", "tau . sigma . tau",
                 "(sigma * id) . tau . (id * sigma)", "--mode", "oracle"});
  CHECK(hex.code == 0);
  CHECK(hex.out == "equal (oracle)\n");

  // Pentagon, coherence route.
  Run pent = cli({"equal", "tau . tau", "(tau * id) . tau . (id * tau)",
                  "--mode", "coherence"});
  CHECK(pent.code == 0);
  CHECK(pent.out == "equal (coherence)\n");

  // Default mode falls back to the oracle when the lift is silent.
  Run both = cli({"equal", "sigma . sigma", "id"});
  CHECK(both.code == 0);
  CHECK(both.out == "equal (oracle)\n");

  Run unknown = cli({"equal", "tau", "id", "--mode", "coherence"});
  CHECK(unknown.code == 2);
  CHECK(unknown.out.find("unknown") == 0);

  Run diff = cli({"equal", "tau", "id"});
  CHECK(diff.code == 1);
  CHECK(diff.out.find("n = 1") != std::string::npos);

  Run bad = cli({"equal", "tau *", "id"});
  CHECK(bad.code == 3);

  Run json = cli({"equal", "tau", "id", "--json"});
  CHECK(json.code == 1);
  nlohmann::json parsed = nlohmann::json::parse(json.out);
  CHECK(parsed.at("verdict") == "not-equal");
  CHECK(parsed.at("witness") == 1);
}

TEST_CASE("lift prints the typing or rejects sigma") {
  Run tau = cli({"lift", "tau"});
  CHECK(tau.code == 0);
  CHECK(tau.out == "(v1 (v2 v3)) ⇒ ((v1 v2) v3)\n");
  Run sq = cli({"lift", "tau . tau", "--json"});
  CHECK(sq.code == 0);
  nlohmann::json parsed = nlohmann::json::parse(sq.out);
  CHECK(parsed.at("source") == "(v1 (v2 (v3 v4)))");
  CHECK(parsed.at("target") == "(((v1 v2) v3) v4)");
  Run sig = cli({"lift", "sigma"});
  CHECK(sig.code == 3);
  CHECK(sig.err.find("sigma") != std::string::npos);
}

TEST_CASE("gen emits verified identities as json lines") {
  Run r3 = cli({"gen", "--rank", "3"});
  CHECK(r3.code == 0);
  std::istringstream lines(r3.out);
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(lines, line)) rows.push_back(nlohmann::json::parse(line));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].at("rank") == 3);
  CHECK(rows[0].at("lhs") == "tau");
  CHECK(rows[0].at("status") == "coherent-and-oracle-checked");
  CHECK(rows[1].at("lhs") == "tau^-1");
  CHECK(rows[0].at("table").at("branches").size() == 3);

  Run r2 = cli({"gen", "--rank", "2"});
  CHECK(r2.code == 0);
  CHECK(r2.out.empty());

  Run limited = cli({"gen", "--rank", "4", "--limit", "5"});
  CHECK(std::count(limited.out.begin(), limited.out.end(), '\n') == 5);

  Run bad = cli({"gen", "--rank", "1"});
  CHECK(bad.code == 3);

  // Byte-identical output on identical invocations.
  CHECK(cli({"gen", "--rank", "4"}).out == cli({"gen", "--rank", "4"}).out);
}

TEST_CASE("gen writes to a file") {
  std::string path = "gen_out_test.jsonl";
  Run r = cli({"gen", "--rank", "3", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::string line;
  int n = 0;
  while (std::getline(f, line)) ++n;
  CHECK(n == 2);
  f.close();
  std::remove(path.c_str());
}

TEST_CASE("verify-diagram exit codes and reports") {
  TempFile good("diagram_good_test.json", kCommutingDiagram);
  Run ok = cli({"verify-diagram", good.path});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("diagram commutes") == 0);
  CHECK(ok.out.find("[COHERENT]") != std::string::npos);

  Run js = cli({"verify-diagram", good.path, "--json"});
  nlohmann::json parsed = nlohmann::json::parse(js.out);
  CHECK(parsed.at("commutes") == true);
  CHECK(cli({"verify-diagram", good.path, "--json"}).out == js.out);

  TempFile bad("diagram_bad_test.json", kBrokenDiagram);
  Run broken = cli({"verify-diagram", bad.path});
  CHECK(broken.code == 1);
  CHECK(broken.out.find("does not commute") != std::string::npos);
  CHECK(broken.out.find("[NOT_EQUAL]") != std::string::npos);

  TempFile garbage("diagram_garbage_test.json", "{not json");
  CHECK(cli({"verify-diagram", garbage.path}).code == 3);
  CHECK(cli({"verify-diagram", "missing_file_test.json"}).code == 3);
}

TEST_CASE("usage errors exit with the input-error code") {
  CHECK(cli({}).code == 3);
  CHECK(cli({"frobnicate"}).code == 3);
  CHECK(cli({"eval"}).code == 3);
  CHECK(cli({"equal", "tau", "id", "--mode", "psychic"}).code == 3);
  CHECK(cli({"--help"}).code == 0);
}
