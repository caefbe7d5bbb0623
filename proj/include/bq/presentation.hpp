#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bq/diagram.hpp"
#include "bq/terms.hpp"

namespace bq {

// Fundamental presentations are taken literally; topological ones are
// additionally subject to the operand-independence schema, so relation
// equality is tested on triple normal forms and colorings must land on a
// subset where the schema holds.
enum class Kind { Fundamental, Topological };

std::string kind_text(Kind k);
Kind kind_from_text(const std::string& s);

struct Presentation {
  Kind kind = Kind::Fundamental;
  std::vector<std::string> generators;  // sorted, unique
  std::vector<std::pair<TermPtr, TermPtr>> relations;
};

// Generators = semiarcs, relations = the crossing relations.
Presentation fundamental_presentation(const Diagram& d);
Presentation topological_presentation(const Diagram& d);

// The operand-independence schema over a generator set, materialized: for
// every ordered triple (a,b,c) in lexicographic order, the four instances
//   a ^ (b _ c) = a ^ b      a ^- (b _ c) = a ^- b
//   a _ (b ^ c) = a _ b      a _- (b ^ c) = a _- b
// in that order; 4·n^3 relations in total.
std::vector<std::pair<TermPtr, TermPtr>> materialize_r(const std::vector<std::string>& gens);

// Eliminates generators while a relation determines one. Moves, tried in
// phase order with a restart after every elimination:
//   A1  lhs is (s _ t) or (s _- t) with s a bare generator absent from the
//       other side and from t: s gets the bar-solved definition.
//   A2  a bare-generator side absent from the other side (native step).
//   B   like A1 for (s ^ t) / (s ^- t).
//   C   a compound side whose spine exposes a base generator absent from the
//       accumulated other side after peeling (multi-step solve).
// Relations whose sides are equal are dropped (normal-form equality for
// topological presentations). Bar-solving is sound exactly where the
// operand-independence identities hold; counting invariants over other
// targets are only guaranteed for the fundamental relations as emitted.
// Topological runs finish by transporting each relation so its right side is
// a bare generator, re-entering elimination if that enables more moves.
Presentation tietze_eliminate(const Presentation& p);

// Text format:
//   kind: fundamental
//   gens: a b c
//   (a ^ b) = c        one relation per line
// Blank lines and '#' comments are ignored. Relations over undeclared
// generators throw ParseError.
std::string presentation_text(const Presentation& p);
Presentation presentation_from_text(const std::string& text);

}  // namespace bq
