#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>

#include "bq/diagram.hpp"
#include "doctest.h"

using namespace bq;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(BQ_FIXTURES_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("fixture diagrams parse with the expected shape") {
  struct Row {
    const char* file;
    size_t arcs, crossings, comps;
  };
  for (const Row& row : std::vector<Row>{
           {"unknot.pd", 1, 0, 1},
           {"kink_pos.pd", 2, 1, 1},
           {"kink_neg.pd", 2, 1, 1},
           {"trefoil.pd", 6, 3, 1},
           {"trefoil_r1.pd", 8, 4, 1},
           {"trefoil_r2.pd", 10, 5, 1},
           {"l6n1.pd", 12, 6, 3},
       }) {
    CAPTURE(row.file);
    Diagram d = parse_diagram(slurp(row.file));
    CHECK(d.semiarcs.size() == row.arcs);
    CHECK(d.crossings.size() == row.crossings);
    CHECK(components(d).size() == row.comps);
  }
}

TEST_CASE("crossing relations come out under-then-over in input order") {
  Diagram d = parse_diagram(slurp("l6n1.pd"));
  const std::vector<std::string> expect = {
      "(l ^ a) = i", "(a _ l) = b", "(f ^ k) = g", "(k _ f) = l",
      "(g ^ d) = h", "(d _ g) = a", "(c ^ j) = d", "(j _ c) = k",
      "(i ^ h) = j", "(h _ i) = e", "(b ^ e) = c", "(e _ b) = f"};
  auto rels = crossing_relations(d);
  REQUIRE(rels.size() == expect.size());
  for (size_t i = 0; i < rels.size(); ++i) {
    CHECK(term_text(rels[i].first) + " = " + term_text(rels[i].second) == expect[i]);
  }
}

TEST_CASE("negative crossings use barred operations") {
  Diagram d = parse_diagram("- a b b a\n");
  auto rels = crossing_relations(d);
  REQUIRE(rels.size() == 2);
  CHECK(term_text(rels[0].first) + " = " + term_text(rels[0].second) == "(a ^- b) = b");
  CHECK(term_text(rels[1].first) + " = " + term_text(rels[1].second) == "(b _- a) = a");
}

TEST_CASE("components follow the strands") {
  Diagram d = parse_diagram(slurp("l6n1.pd"));
  auto comps = components(d);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(comps[1] == std::vector<std::string>{"e", "f", "g", "h"});
  CHECK(comps[2] == std::vector<std::string>{"i", "j", "k", "l"});

  // An unknotted marker is its own component, sorted in with the rest.
  Diagram u = parse_diagram("O z\n+ a b a b\n");
  auto cu = components(u);
  REQUIRE(cu.size() == 3);
  CHECK(cu[0] == std::vector<std::string>{"a"});
  CHECK(cu[1] == std::vector<std::string>{"b"});
  CHECK(cu[2] == std::vector<std::string>{"z"});
}

TEST_CASE("unknotted markers are components") {
  Diagram u = parse_diagram("O z\n");
  CHECK(u.semiarcs == std::vector<std::string>{"z"});
  CHECK(u.crossings.empty());
  CHECK(components(u) == std::vector<std::vector<std::string>>{{"z"}});
  CHECK(crossing_relations(u).empty());
}

TEST_CASE("parse errors are structural and carry line numbers") {
  // Bad token count.
  CHECK_THROWS_AS(parse_diagram("+ a b c\n"), ParseError);
  // Bad sign marker.
  CHECK_THROWS_AS(parse_diagram("* a b c d\n"), ParseError);
  // Invalid name.
  CHECK_THROWS_AS(parse_diagram("+ a B c d\n"), ParseError);
  // Duplicate role: 'a' enters twice as an under-strand.
  CHECK_THROWS_AS(parse_diagram("+ a b c d\n+ a c d b\n"), ParseError);
  // Dangling semiarcs: inputs and outputs don't match up.
  CHECK_THROWS_AS(parse_diagram("+ a b c d\n"), ParseError);
  // Duplicate unknotted marker.
  CHECK_THROWS_AS(parse_diagram("O z\nO z\n"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  Diagram d = parse_diagram("# a kink\n\n+ a b b a\n# trailing\n");
  CHECK(d.crossings.size() == 1);
  CHECK(d.semiarcs == std::vector<std::string>{"a", "b"});
}

TEST_CASE("diagram_text is idempotent and canonical") {
  std::string src = "+ a b b a\nO q\n";
  Diagram d = parse_diagram(src);
  std::string emitted = diagram_text(d);
  CHECK(emitted == "O q\n+ a b b a\n");
  CHECK(diagram_text(parse_diagram(emitted)) == emitted);

  for (const char* f : {"trefoil.pd", "l6n1.pd", "trefoil_r2.pd"}) {
    std::string t = diagram_text(parse_diagram(slurp(f)));
    CHECK(diagram_text(parse_diagram(t)) == t);
  }
}
