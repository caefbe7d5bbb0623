#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace bq {

// Row-indexed operation table: tab[a][b] is the result of applying the
// operation with left operand a and right operand b.
using Table = std::vector<std::vector<int>>;

// One axiom violation. `axiom` names the failed check:
//   axiom1-f / axiom1-g : an up/down column is not a permutation
//                         (witness {b, x1, x2}; left == right is the collision)
//   axiom1-S            : the pair map S(x,y) = (y_x, x^y) is not injective
//                         (witness {x1, y1, x2, y2}; left/right = shared image)
//   axiom2-f            : x = f_a^{-1}(a) fails x == a _ x (witness {a, x})
//   axiom2-g            : y = g_a^{-1}(a) fails y == a ^ y (witness {a, y})
//   axiom3-upint / axiom3-five / axiom3-downint
//                       : an exchange-law instance fails (witness {a, b, c})
// For the equational axioms, left and right are the two values that should
// have agreed. Witnesses are lexicographically first per category.
struct AxiomFailure {
  std::string axiom;
  std::vector<int> witness;
  int left = 0;
  int right = 0;
};

struct AxiomReport {
  bool passed = false;
  std::vector<AxiomFailure> failures;  // empty iff passed; at most one per category
};

// A validated finite biquandle. The bar tables invert the pair map
// S(x,y) = (y _ x, x ^ y): writing a = y _ x and b = x ^ y, we have
// bar_up[b][a] == x and bar_down[a][b] == y. Equivalently,
//   (a ^ b) ^- (b _ a) == a   and   (a _ b) _- (b ^ a) == a.
// The plain column cancellation (a ^ b) ^- b == a holds exactly on tables
// that satisfy the operand-independence identities.
struct FiniteBiquandle {
  int order = 0;
  Table up, down, bar_up, bar_down;
  std::vector<std::string> labels;  // optional; empty or size == order

  int u(int a, int b) const { return up[a][b]; }
  int d(int a, int b) const { return down[a][b]; }
  int bu(int a, int b) const { return bar_up[a][b]; }
  int bd(int a, int b) const { return bar_down[a][b]; }
};

struct Validation {
  std::optional<FiniteBiquandle> biquandle;  // engaged iff report.passed
  AxiomReport report;
};

// Checks the three biquandle axioms and derives the bar tables on success.
// Axiom violations are reported, not thrown; malformed input (empty, not
// square, entries out of range) throws std::invalid_argument.
Validation validate_biquandle(const Table& up, const Table& down,
                              std::vector<std::string> labels = {});

// down is the first-argument projection: a _ b == a for all a, b.
bool is_quandle(const FiniteBiquandle& b);

// The four operand-independence identities, in witness scan order:
//   1: a ^  (b _ c) == a ^  b      2: a ^- (b _ c) == a ^- b
//   3: a _  (b ^ c) == a _  b      4: a _- (b ^ c) == a _- b
struct RWitness {
  int identity = 0;  // 1..4
  std::array<int, 3> triple{};
  int left = 0;
  int right = 0;
};

// First violated instance under (a,b,c)-lexicographic scan with the four
// identities tried in order at each triple, or nullopt if all hold.
std::optional<RWitness> r_witness(const FiniteBiquandle& b);

inline bool satisfies_r(const FiniteBiquandle& b) { return !r_witness(b); }

// "a ^ (b _ c) = a ^ b" and friends, for witness display.
std::string r_identity_text(int identity);

// All maps h with h(a ^ b) == h(a) ^ h(b) and h(a _ b) == h(a) _ h(b),
// in lexicographic order. Every returned map is additionally checked to
// preserve the bar operations; a violation (impossible) throws
// std::logic_error.
std::vector<std::vector<int>> homomorphisms(const FiniteBiquandle& from,
                                            const FiniteBiquandle& to);

// Every biquandle of the given order (supported range 1..4), sorted by the
// row-major integer encoding of the (up, down) table pair. Out-of-range
// order throws std::invalid_argument.
std::vector<FiniteBiquandle> enumerate_biquandles(int order);

// Named examples.
FiniteBiquandle shift_cycle(int n);        // a ^ b = a+1, a _ b = a-1 (mod n)
FiniteBiquandle trivial_biquandle(int n);  // both operations project to a
FiniteBiquandle dihedral3();               // a ^ b = 2b-a (mod 3), a _ b = a
FiniteBiquandle z5_example();              // a ^ b = a+4b, a _ b = 2a (mod 5)

// {"order": n, "up": [[..]], "down": [[..]], "labels": [..]?}. Bar tables
// are derived, never stored. Loading re-validates; malformed JSON or shapes
// throw std::invalid_argument.
std::string to_json(const FiniteBiquandle& b);
Validation biquandle_from_json(const std::string& text);

}  // namespace bq
