#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "manyone/cli.hpp"
#include "manyone/workspace.hpp"

using namespace manyone;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string e0 = std::string(FIXTURE_DIR) + "/e0.json";

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "manyone_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("reduce prints a certificate or an exhaustive no") {
  Run yes = run_cli({"reduce", e0, "f", "gprime", "--mode", "m"});
  CHECK(yes.code == 0);
  CHECK(yes.out.rfind("YES: f <=m gprime (depth 2)\n{", 0) == 0);
  CHECK(yes.out.find("\"kind\": \"m\"") != std::string::npos);

  Run no = run_cli({"reduce", e0, "gprime", "idpt", "--mode", "m"});
  CHECK(no.code == 1);
  CHECK(no.out == "NO (exhaustive at depth 2)\n");

  Run strong = run_cli({"reduce", e0, "empty", "idpt", "--mode", "sm"});
  CHECK(strong.code == 0);
  CHECK(strong.out.rfind("YES: empty <=sm idpt", 0) == 0);

  Run shallow = run_cli({"reduce", e0, "f", "gprime", "--mode", "wtt"});
  CHECK(shallow.code == 2);
  CHECK(shallow.out.rfind("UNDECIDABLE: ", 0) == 0);
  Run deep = run_cli({"reduce", e0, "f", "gprime", "--mode", "wtt", "--trunc", "2", "--depth", "4"});
  CHECK(deep.code == 0);
  CHECK(deep.out.rfind("YES: f <=wtt(2) gprime (depth 4)", 0) == 0);
}

TEST_CASE("emitted certificates check out") {
  fs::path cert = scratch("f_gprime.json");
  Run r = run_cli({"reduce", e0, "f", "gprime", "--emit-cert", cert.string()});
  REQUIRE(r.code == 0);
  Run ok = run_cli({"check-cert", e0, cert.string()});
  CHECK(ok.code == 0);
  CHECK(ok.out == "VALID: f <=m gprime\n");

  fs::path bad = scratch("gprime_f.json");
  write_file(bad.string(), R"({"kind": "m", "f": "gprime", "g": "f", "H": "pi2[X,Y]", "K": "id[X]"})");
  Run invalid = run_cli({"check-cert", e0, bad.string()});
  CHECK(invalid.code == 1);
  CHECK(invalid.out.rfind("INVALID: ", 0) == 0);

  fs::path typed = scratch("swapped.json");
  write_file(typed.string(), R"({"kind": "m", "f": "f", "g": "gprime", "H": "id[X]", "K": "pi2[X,Y]"})");
  Run ill = run_cli({"check-cert", e0, typed.string()});
  CHECK(ill.code == 2);
  CHECK(ill.err.rfind("error: ", 0) == 0);
}

TEST_CASE("order and hasse") {
  Run m = run_cli({"order", e0});
  CHECK(m.code == 0);
  CHECK(m.out == read_file(std::string(GOLDEN_DIR) + "/fixture_order_m.tsv"));
  Run sm = run_cli({"order", e0, "--mode", "sm"});
  CHECK(sm.code == 0);
  CHECK(sm.out.rfind("sm\t", 0) == 0);
  Run wtt = run_cli({"order", e0, "--mode", "wtt"});
  CHECK(wtt.code == 2);
  CHECK(wtt.out.find("# f, gprime: ") != std::string::npos);

  fs::path dot = scratch("degrees.dot");
  Run h = run_cli({"hasse", e0, "--dot", dot.string()});
  CHECK(h.code == 0);
  CHECK(h.out.find("3 classes") != std::string::npos);
  std::string text = read_file(dot.string());
  CHECK(text.rfind("digraph degrees {", 0) == 0);
  CHECK(text.find("c1 [label=\"f, g, idpt\"];") != std::string::npos);
  CHECK(text.find("c0 -> c1;") != std::string::npos);
}

TEST_CASE("lattice and parameter checks") {
  fs::path ws = scratch("pair.json");
  write_file(ws.string(), R"({"atoms": {"X": ["a", "b"], "Y": ["0", "1"]},
    "problems": [{"name": "f", "src": "X", "dst": "Y", "pairs": [["a", "0"], ["a", "1"], ["b", "1"]]},
                 {"name": "g", "src": "X", "dst": "Y", "pairs": [["a", "0"]]}]})");
  Run deep = run_cli({"lattice", ws.string(), "--depth", "3"});
  CHECK(deep.code == 0);
  CHECK(deep.out.find("lattice checks passed (universe depth 3)") != std::string::npos);
  Run shallow = run_cli({"lattice", ws.string()});
  CHECK(shallow.code == 2);
  CHECK(shallow.out.find("UNDECIDABLE") != std::string::npos);

  std::string loose = std::string(FIXTURE_DIR) + "/kappa_doubling.json";
  std::string tight = std::string(FIXTURE_DIR) + "/kappa_doubling_tight.json";
  Run accepted = run_cli({"param-check", loose, "p", "q"});
  CHECK(accepted.code == 0);
  CHECK(accepted.out.find("ACCEPTED (parameter-bound only)") != std::string::npos);
  Run rejected = run_cli({"param-check", tight, "p", "q"});
  CHECK(rejected.code == 1);
  CHECK(rejected.out.find("REJECTED (parameter-bound only)") != std::string::npos);
  Run gens = run_cli({"param-check", loose});
  CHECK(gens.code == 0);
  CHECK(gens.out.find("generator dbl: bound {1: 2, 2: 4} holds") != std::string::npos);
  CHECK(run_cli({"param-check", tight}).code == 1);
  CHECK(run_cli({"param-check", loose, "p"}).code == 2);
}

TEST_CASE("axioms") {
  Run r = run_cli({"axioms", "--cases", "20", "--seed", "7", "--max-atom-size", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("violations: 0\n") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"bogus"}).code == 2);
  CHECK(run_cli({"reduce", e0, "f"}).code == 2);
  CHECK(run_cli({"reduce", e0, "f", "g", "--mode", "tt"}).code == 2);
  Run missing = run_cli({"order", "/nonexistent/ws.json"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot read") != std::string::npos);
  fs::path broken = scratch("broken.json");
  write_file(broken.string(), R"({"atoms": {"X": ["a"]}, "problems": [{"name": "p", "src": "X", "dst": "X",
    "pairs": [["a", "a"], ["a", "a"], ["c", "a"]]}]})");
  Run bad = run_cli({"order", broken.string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("schema violation at problems[0].pairs[2]") != std::string::npos);
  CHECK(run_cli({"reduce", e0, "f", "nope"}).code == 2);
}

TEST_CASE("output is deterministic") {
  fs::path dot1 = scratch("d1.dot"), dot2 = scratch("d2.dot");
  std::vector<std::vector<std::string>> commands{
      {"reduce", e0, "f", "gprime"},
      {"reduce", e0, "f", "idpt", "--mode", "sm"},
      {"order", e0},
      {"axioms", "--cases", "10", "--seed", "3"},
      {"param-check", std::string(FIXTURE_DIR) + "/kappa_doubling.json", "p", "q"},
  };
  for (const auto& c : commands) {
    Run a = run_cli(c), b = run_cli(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  run_cli({"hasse", e0, "--dot", dot1.string()});
  run_cli({"hasse", e0, "--dot", dot2.string()});
  CHECK(read_file(dot1.string()) == read_file(dot2.string()));
}
