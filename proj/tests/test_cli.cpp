#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr interleaved
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(BQ_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  RunResult r;
  r.out = out;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& name) { return std::string(BQ_FIXTURES_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream(path) << content;
  return path;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream in(s);
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("check reports validity, quandle and independence flags") {
  RunResult r3 = run("check " + fx("r3.json"));
  CHECK(r3.code == 0);
  CHECK(contains(r3.out, "valid: order 3"));
  CHECK(contains(r3.out, "quandle: yes"));
  CHECK(contains(r3.out, "satisfies-R: yes"));

  RunResult z5 = run("check " + fx("z5.json"));
  CHECK(z5.code == 0);
  CHECK(contains(z5.out, "valid: order 5"));
  CHECK(contains(z5.out, "quandle: no"));
  CHECK(contains(z5.out, "satisfies-R: no"));
  CHECK(contains(z5.out, "fails at"));
}

TEST_CASE("check --json is machine readable") {
  RunResult r = run("check --json " + fx("shift_z3.json"));
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["valid"] == true);
  CHECK(j["order"] == 3);
  CHECK(j["quandle"] == false);
  CHECK(j["satisfies_r"] == true);
}

TEST_CASE("check rejects a non-biquandle table with exit code 1") {
  std::string bad = temp_file("bq_cli_bad.json",
                              R"({"order": 3,
                                  "up": [[1,1,1],[2,2,2],[0,0,0]],
                                  "down": [[1,1,1],[2,2,2],[0,0,0]]})");
  RunResult r = run("check " + bad);
  CHECK(r.code == 1);
  CHECK(contains(r.out, "invalid: axiom2-f at (0,2): 2 != 1"));

  RunResult j = run("check --json " + bad);
  CHECK(j.code == 1);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["valid"] == false);
  CHECK(parsed["failures"][0]["axiom"] == "axiom2-f");

  RunResult missing = run("check /no/such/file.json");
  CHECK(missing.code == 1);
  CHECK(contains(missing.out, "error:"));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("enumerate 7").code == 2);
  CHECK(run("check").code == 2);
  CHECK(run("count " + fx("trefoil.pd")).code == 2);
  CHECK(run("present " + fx("trefoil.pd") + " --kind sideways").code == 2);
}

TEST_CASE("enumerate counts and filters") {
  CHECK(run("enumerate 3 --count").out == "36\n");
  CHECK(run("enumerate 3 --count --satisfies-r").out == "26\n");
  CHECK(run("enumerate 3 --count --quandle").out == "5\n");
  CHECK(run("enumerate 1 --count").out == "1\n");

  RunResult two = run("enumerate 2");
  CHECK(two.code == 0);
  auto lines = lines_of(two.out);
  REQUIRE(lines.size() == 2);
  auto j = nlohmann::json::parse(lines[0]);
  CHECK(j["order"] == 2);
  CHECK(j["up"].size() == 2);
}

TEST_CASE("present prints the crossing relations") {
  RunResult r = run("present " + fx("trefoil.pd"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "kind: fundamental"));
  CHECK(contains(r.out, "gens: 1 2 3 4 5 6"));
  CHECK(contains(r.out, "(1 ^ 4) = 2"));
  CHECK(contains(r.out, "(4 _ 1) = 5"));

  RunResult s = run("present " + fx("kink_pos.pd") + " --simplify");
  CHECK(s.code == 0);
  CHECK(contains(s.out, "gens: a"));
  CHECK(contains(s.out, "(a ^ (a _- a)) = (a _- a)"));

  RunResult t = run("present " + fx("kink_pos.pd") + " --kind topological --simplify");
  CHECK(t.code == 0);
  CHECK(contains(t.out, "kind: topological"));
  CHECK(contains(t.out, "gens: a"));
  CHECK(!contains(t.out, "^"));  // no relations survive
}

TEST_CASE("simplify accepts presentation files and diagram files") {
  RunResult pres = run("present " + fx("trefoil.pd") + " --kind topological");
  REQUIRE(pres.code == 0);
  std::string file = temp_file("bq_cli_trefoil.pres", pres.out);
  RunResult s = run("simplify " + file);
  CHECK(s.code == 0);
  CHECK(contains(s.out, "gens: 3 5"));
  CHECK(contains(s.out, "((((5 ^ 3) ^ 5) _ 3) _ 5) = 3"));

  RunResult d = run("simplify " + fx("trefoil.pd") + " --kind topological");
  CHECK(d.code == 0);
  CHECK(d.out == s.out);
}

TEST_CASE("count emits one json line per mode") {
  RunResult one = run("count " + fx("trefoil.pd") + " " + fx("r3.json") + " --mode fundamental");
  CHECK(one.code == 0);
  auto lines = lines_of(one.out);
  REQUIRE(lines.size() == 1);
  auto j = nlohmann::json::parse(lines[0]);
  CHECK(j["diagram"] == "trefoil");
  CHECK(j["target"] == "r3");
  CHECK(j["mode"] == "fundamental");
  CHECK(j["count"] == 9);
  CHECK(j["ms"].is_number());

  RunResult both = run("count " + fx("l6n1.pd") + " " + fx("shift_z3.json"));
  auto blines = lines_of(both.out);
  REQUIRE(blines.size() == 2);
  CHECK(nlohmann::json::parse(blines[0])["mode"] == "fundamental");
  CHECK(nlohmann::json::parse(blines[0])["count"] == 27);
  CHECK(nlohmann::json::parse(blines[1])["mode"] == "topological");
  CHECK(nlohmann::json::parse(blines[1])["count"] == 27);

  RunResult oracle =
      run("count " + fx("trefoil.pd") + " " + fx("r3.json") + " --mode topological --oracle");
  CHECK(nlohmann::json::parse(lines_of(oracle.out)[0])["count"] == 9);
}

TEST_CASE("count --batch runs a manifest") {
  nlohmann::json manifest = nlohmann::json::array();
  manifest.push_back({{"diagram", fx("trefoil.pd")}, {"target", fx("r3.json")},
                      {"mode", "fundamental"}});
  manifest.push_back({{"diagram", fx("unknot.pd")}, {"target", fx("z5.json")}});
  std::string file = temp_file("bq_cli_batch.json", manifest.dump());

  RunResult r = run("count --batch " + file);
  CHECK(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(nlohmann::json::parse(lines[0])["count"] == 9);
  auto u5f = nlohmann::json::parse(lines[1]);
  CHECK(u5f["diagram"] == "unknot");
  CHECK(u5f["target"] == "z5");
  CHECK(u5f["count"] == 5);
  CHECK(nlohmann::json::parse(lines[2])["count"] == 1);
}

TEST_CASE("normalize prints triple normal forms") {
  CHECK(run("normalize '(a ^ a)'").out == "a ^[] _[a-]\n");
  CHECK(run("normalize '((a ^ b) _ c)'").out == "a ^[b+] _[c+]\n");
  CHECK(run("normalize 'a'").out == "a ^[] _[]\n");
  RunResult bad = run("normalize '(a ^'");
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "error:"));
}

TEST_CASE("separate searches the small targets") {
  std::string free_a = temp_file("bq_cli_free_a.pres", "kind: fundamental\ngens: a\n");
  RunResult sep = run("separate " + free_a + " a '(a ^ a)'");
  CHECK(sep.code == 0);
  CHECK(contains(sep.out, "separated: order 2 target"));
  CHECK(contains(sep.out, "coloring: a=0"));
  CHECK(contains(sep.out, "values: 0 vs 1"));

  std::string top_abc =
      temp_file("bq_cli_top_abc.pres", "kind: topological\ngens: a b c\n");
  RunResult eq = run("separate " + top_abc + " '(a ^ (b _ c))' '(a ^ b)'");
  CHECK(eq.code == 0);
  CHECK(contains(eq.out, "equal: proved"));

  std::string fund_ab = temp_file("bq_cli_fund_ab.pres", "kind: fundamental\ngens: a b\n");
  RunResult unk = run("separate " + fund_ab + " '((a ^ b) ^- (b _ a))' a");
  CHECK(unk.code == 0);
  CHECK(contains(unk.out, "unknown: no separating target through order 3"));
}

TEST_CASE("verify-paper lists criteria and runs a selection") {
  RunResult list = run("verify-paper --list");
  CHECK(list.code == 0);
  auto lines = lines_of(list.out);
  REQUIRE(lines.size() == 9);
  CHECK(lines[0].rfind("1: ", 0) == 0);
  CHECK(lines[8].rfind("9: ", 0) == 0);

  RunResult one = run("verify-paper --fixtures " + std::string(BQ_FIXTURES_DIR) + " 1");
  CHECK(one.code == 0);
  CHECK(contains(one.out, "[PASS] criterion 1"));
  CHECK(contains(one.out, "summary: 1/1 criteria passed"));

  RunResult missing = run("verify-paper --fixtures /no/such/dir 1");
  CHECK(missing.code == 1);
}

TEST_CASE("--version prints the tool version") {
  RunResult r = run("--version");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "bq 0.1.0"));
}
