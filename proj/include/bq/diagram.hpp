#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bq/terms.hpp"

namespace bq {

// One crossing of an oriented diagram. Semiarc roles are the four strand
// ends: the under-strand enters at under_in and leaves at under_out, the
// over-strand enters at over_in and leaves at over_out.
struct Crossing {
  int sign = 1;  // +1 or -1
  std::string under_in, over_in, under_out, over_out;
};

// A diagram is a list of signed crossings over named semiarcs, plus optional
// crossingless unknotted components. Every semiarc occurs exactly once as an
// input and once as an output.
struct Diagram {
  std::vector<Crossing> crossings;
  std::vector<std::string> unknotted;  // 'O' markers, their own input/output
  std::vector<std::string> semiarcs;   // sorted, unique
};

// Text format, one entry per line:
//   + under_in over_in under_out over_out     positive crossing
//   - under_in over_in under_out over_out     negative crossing
//   O name                                    crossingless component
// Blank lines and lines starting with '#' are ignored. Names follow the term
// grammar ([a-z0-9]+). Structural problems (bad tokens, a semiarc used twice
// in the same role, or dangling semiarcs) throw ParseError.
Diagram parse_diagram(const std::string& text);

// Canonical re-emission: unknotted markers first (sorted), then crossings in
// input order, single-space separated. parse then emit is idempotent.
std::string diagram_text(const Diagram& d);

// Two relations per crossing, under-strand first, crossings in input order:
//   positive: under_in ^  over_in  = under_out,  over_in _  under_in = over_out
//   negative: under_in ^- over_in  = under_out,  over_in _- under_in = over_out
std::vector<std::pair<TermPtr, TermPtr>> crossing_relations(const Diagram& d);

// Semiarc names grouped by link component (strands connect through each
// crossing: under_in ~ under_out and over_in ~ over_out). Each group is
// sorted; groups are ordered by their first name.
std::vector<std::vector<std::string>> components(const Diagram& d);

}  // namespace bq
