#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "bq/terms.hpp"
#include "doctest.h"

using namespace bq;

TEST_CASE("parsing round-trips through term_text") {
  for (const char* src : {
           "a",
           "x0",
           "(a ^ b)",
           "(a _ b)",
           "(a ^- b)",
           "(a _- b)",
           "((a ^ b) _- (c ^- d))",
           "(((a ^ a) ^ a) ^ a)",
           "(1 ^ (5 _- 1))",
       }) {
    TermPtr t = parse_term(src);
    CHECK(term_text(t) == src);
    CHECK(term_eq(t, parse_term(term_text(t))));
  }
}

TEST_CASE("parsing is whitespace-insensitive") {
  TermPtr a = parse_term("((a^b)_-(c^-d))");
  TermPtr b = parse_term("  ( ( a ^ b )\n _- ( c ^- d ) )  ");
  CHECK(term_eq(a, b));
  CHECK(term_text(a) == "((a ^ b) _- (c ^- d))");
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_term(""), ParseError);
  CHECK_THROWS_AS(parse_term("(a ^ b"), ParseError);
  CHECK_THROWS_AS(parse_term("(a & b)"), ParseError);
  CHECK_THROWS_AS(parse_term("(a ^ b) c"), ParseError);
  CHECK_THROWS_AS(parse_term("(A ^ b)"), ParseError);
  try {
    parse_term("(a ^ b");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.pos == 6);
  }
}

TEST_CASE("generators_of and substitution") {
  TermPtr t = parse_term("((a ^ b) _- (c ^- a))");
  CHECK(generators_of(t) == std::set<std::string>{"a", "b", "c"});

  TermPtr r = parse_term("(b _ b)");
  TermPtr s = substitute(t, "a", r);
  CHECK(term_text(s) == "(((b _ b) ^ b) _- (c ^- (b _ b)))");
  // Untouched subtrees are shared, not copied.
  CHECK(substitute(t, "z", r) == t);
  CHECK(s->rhs->lhs == t->rhs->lhs);
}

TEST_CASE("evaluation in small targets") {
  FiniteBiquandle s3 = shift_cycle(3);
  FiniteBiquandle r3 = dihedral3();

  Env env{{"a", 0}, {"b", 0}};
  CHECK(eval_term(parse_term("(a ^ b)"), env, s3) == 1);
  CHECK(eval_term(parse_term("(a _ b)"), env, s3) == 2);
  CHECK(eval_term(parse_term("((a ^ b) ^- b)"), env, s3) == 0);

  // Dihedral: up is x, y -> 2y - x mod 3, down projects to the first argument.
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Env e{{"a", a}, {"b", b}};
      CHECK(eval_term(parse_term("(a ^ b)"), e, r3) == ((2 * b - a) % 3 + 3) % 3);
      CHECK(eval_term(parse_term("(a _ b)"), e, r3) == a);
    }
  }

  CHECK_THROWS_AS(eval_term(parse_term("(a ^ q)"), env, s3), std::out_of_range);
}

TEST_CASE("word reduction and inverses") {
  Word w{{"a", 1}, {"b", 1}, {"b", -1}, {"a", 1}};
  CHECK(reduced(w) == Word{{"a", 1}, {"a", 1}});
  CHECK(inverse(reduced(w)) == Word{{"a", -1}, {"a", -1}});
  CHECK(concat(w, inverse(w)).empty());
  CHECK(word_text(Word{{"b", 1}, {"c", -1}}) == "b+,c-");
  CHECK(word_text(Word{}) == "");
}

TEST_CASE("canonical triples drain leading base powers") {
  // (a ^ a) slides to a bare strand with one negative down letter.
  TopTriple t = normalize(parse_term("(a ^ a)"));
  CHECK(t == TopTriple{"a", {}, {{"a", -1}}});
  CHECK(triple_text(t) == "a ^[] _[a-]");

  // (a _ a) has nothing to drain.
  CHECK(normalize(parse_term("(a _ a)")) == TopTriple{"a", {}, {{"a", 1}}});

  // make_triple reduces and drains in one step.
  CHECK(make_triple("a", {{"a", 1}, {"a", 1}}, {}) ==
        TopTriple{"a", {}, {{"a", -1}, {"a", -1}}});
  CHECK(make_triple("a", {{"b", 1}, {"b", -1}, {"a", -1}}, {{"c", 1}}) ==
        TopTriple{"a", {}, {{"a", 1}, {"c", 1}}});
}

TEST_CASE("triple operations append conjugates") {
  TopTriple a = normalize(parse_term("a"));
  TopTriple b = normalize(parse_term("b"));
  CHECK(top_up(a, b) == TopTriple{"a", {{"b", 1}}, {}});
  CHECK(top_bar_up(a, b) == TopTriple{"a", {{"b", -1}}, {}});
  CHECK(top_down(a, b) == TopTriple{"a", {}, {{"b", 1}}});

  // Operating by (b ^ c) appends c's conjugate of b.
  TopTriple bc = normalize(parse_term("(b ^ c)"));
  CHECK(top_up(a, bc) == TopTriple{"a", {{"c", -1}, {"b", 1}, {"c", 1}}, {}});

  // Self-operation drains again: a ^ a then _ b.
  TopTriple t = top_down(normalize(parse_term("(a ^ a)")), b);
  CHECK(t == TopTriple{"a", {}, {{"a", -1}, {"b", 1}}});
}

TEST_CASE("f and g inverses satisfy their defining equations") {
  for (const char* src : {"a", "(a ^ b)", "((a _- b) ^ c)"}) {
    TopTriple x = normalize(parse_term(src));
    TopTriple fi = top_f_inverse(x);
    CHECK(top_up(fi, x) == x);
    CHECK(fi == top_down(x, fi));
    TopTriple gi = top_g_inverse(x);
    CHECK(top_down(gi, x) == x);
    CHECK(gi == top_up(x, gi));
  }
}

TEST_CASE("render inverts normalize on random canonical triples") {
  std::mt19937 rng(3);
  const std::vector<std::string> gens = {"a", "b", "c"};
  auto word = [&]() {
    Word w;
    int len = (int)(rng() % 6);
    for (int i = 0; i < len; ++i) w.push_back({gens[rng() % 3], rng() % 2 ? 1 : -1});
    return w;
  };
  for (int i = 0; i < 200; ++i) {
    TopTriple t = make_triple(gens[rng() % 3], word(), word());
    CHECK(normalize(render(t)) == t);
  }
}

TEST_CASE("eval_triple agrees with eval_term after normalize") {
  FiniteBiquandle s3 = shift_cycle(3);
  FiniteBiquandle r3 = dihedral3();
  for (const char* src :
       {"((a ^ b) _ (c ^- a))", "((a ^ a) ^ a)", "(((a _- b) ^ c) _ (b ^ a))"}) {
    TermPtr t = parse_term(src);
    TopTriple tr = normalize(t);
    for (const FiniteBiquandle* bq : {&s3, &r3}) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          for (int c = 0; c < 3; ++c) {
            Env env{{"a", a}, {"b", b}, {"c", c}};
            CHECK(eval_term(t, env, *bq) == eval_triple(tr, env, *bq));
          }
        }
      }
    }
  }
}

TEST_CASE("triple_text formats signed words") {
  TopTriple t = make_triple("a", {{"b", 1}}, {});
  CHECK(triple_text(t) == "a ^[b+] _[]");
  CHECK(triple_text(make_triple("x1", {}, {{"x2", -1}, {"x1", 1}})) == "x1 ^[] _[x2-,x1+]");
}
