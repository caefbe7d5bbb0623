#include "bq/words.hpp"

namespace bq {

Word reduced(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    out.push_back({it->gen, -it->sign});
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduced(out);
}

std::string word_text(const Word& w) {
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ',';
    out += l.gen;
    out += (l.sign > 0 ? '+' : '-');
  }
  return out;
}

}  // namespace bq
