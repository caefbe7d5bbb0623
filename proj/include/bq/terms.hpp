#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

#include "bq/algebra.hpp"
#include "bq/words.hpp"

namespace bq {

// The four binary operations, plus the leaf marker.
enum class Op { Gen, Up, Down, BarUp, BarDown };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable fully-parenthesized term: a generator name or op(lhs, rhs).
struct Term {
  Op op = Op::Gen;
  std::string name;  // leaves only
  TermPtr lhs, rhs;  // interior nodes only
};

TermPtr gen(std::string name);
TermPtr node(Op op, TermPtr lhs, TermPtr rhs);

bool term_eq(const TermPtr& a, const TermPtr& b);  // structural equality
std::set<std::string> generators_of(const TermPtr& t);
TermPtr substitute(const TermPtr& t, const std::string& g, const TermPtr& replacement);

// Grammar: term := name | "(" term op term ")", op one of ^ _ ^- _-,
// name := [a-z0-9]+. Whitespace-insensitive.
struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(size_t pos, const std::string& what)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos(pos) {}
};
TermPtr parse_term(const std::string& text);
std::string term_text(const TermPtr& t);  // "(a ^ (b _- c))"

using Env = std::map<std::string, int>;

// Evaluates in a finite biquandle. An unbound generator throws
// std::out_of_range naming the generator.
int eval_term(const TermPtr& t, const Env& env, const FiniteBiquandle& b);

// Normal form (base, up-word, down-word) for terms over the free model where
// the operand-independence identities hold. Canonical representative of the
// basepoint-slide class: the up-word never starts with a base letter (any
// leading base power is drained into the down-word), and both words are
// freely reduced.
struct TopTriple {
  std::string base;
  Word up_word, down_word;

  friend bool operator==(const TopTriple&, const TopTriple&) = default;
};

// Canonicalizes an arbitrary representative.
TopTriple make_triple(std::string base, Word up_word, Word down_word);

// The four operations on canonical triples (canonical in, canonical out):
// x ^ y appends the conjugate of y's base by y's up-word to x's up-word,
// x _ y does the same to the down-word with y's down-word; bars use sign -1.
TopTriple top_up(const TopTriple& x, const TopTriple& y);
TopTriple top_down(const TopTriple& x, const TopTriple& y);
TopTriple top_bar_up(const TopTriple& x, const TopTriple& y);
TopTriple top_bar_down(const TopTriple& x, const TopTriple& y);

// The unique x with x ^ a == a, and the unique y with y _ a == a.
TopTriple top_f_inverse(const TopTriple& a);
TopTriple top_g_inverse(const TopTriple& a);

TopTriple normalize(const TermPtr& t);

// Left-nested spelling of a triple: base, then up letters, then down letters.
// normalize(render(x)) == x for canonical x.
TermPtr render(const TopTriple& t);

std::string triple_text(const TopTriple& t);  // "a ^[b+,c-] _[]"

// Folds the up-word then the down-word through the target's tables (bars for
// negative letters). Agrees with eval_term after normalize on targets that
// satisfy the operand-independence identities.
int eval_triple(const TopTriple& t, const Env& env, const FiniteBiquandle& b);

}  // namespace bq
