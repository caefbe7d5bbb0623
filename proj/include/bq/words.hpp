#pragma once

#include <compare>
#include <string>
#include <vector>

namespace bq {

// One letter g^s of a free-group word over named generators; sign is +1 or -1.
struct Letter {
  std::string gen;
  int sign = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Words are kept freely reduced: no adjacent g^s g^{-s} pair survives.
using Word = std::vector<Letter>;

// Cancels adjacent inverse pairs until none remain.
Word reduced(const Word& w);

// Inverse word: letters reversed, signs flipped. Reduced input stays reduced.
Word inverse(const Word& w);

// Freely reduced concatenation.
Word concat(const Word& a, const Word& b);

// "b+,c-" (empty string for the empty word).
std::string word_text(const Word& w);

}  // namespace bq
