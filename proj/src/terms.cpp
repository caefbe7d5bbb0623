#include "bq/terms.hpp"

namespace bq {

TermPtr gen(std::string name) {
  auto t = std::make_shared<Term>();
  t->name = std::move(name);
  return t;
}

TermPtr node(Op op, TermPtr lhs, TermPtr rhs) {
  auto t = std::make_shared<Term>();
  t->op = op;
  t->lhs = std::move(lhs);
  t->rhs = std::move(rhs);
  return t;
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->op != b->op) return false;
  if (a->op == Op::Gen) return a->name == b->name;
  return term_eq(a->lhs, b->lhs) && term_eq(a->rhs, b->rhs);
}

namespace {

void collect_gens(const TermPtr& t, std::set<std::string>& out) {
  if (t->op == Op::Gen) {
    out.insert(t->name);
  } else {
    collect_gens(t->lhs, out);
    collect_gens(t->rhs, out);
  }
}

}  // namespace

std::set<std::string> generators_of(const TermPtr& t) {
  std::set<std::string> out;
  collect_gens(t, out);
  return out;
}

TermPtr substitute(const TermPtr& t, const std::string& g, const TermPtr& replacement) {
  if (t->op == Op::Gen) return t->name == g ? replacement : t;
  TermPtr l = substitute(t->lhs, g, replacement);
  TermPtr r = substitute(t->rhs, g, replacement);
  if (l == t->lhs && r == t->rhs) return t;  // share untouched subtrees
  return node(t->op, std::move(l), std::move(r));
}

namespace {

const char* op_symbol(Op op) {
  switch (op) {
    case Op::Up: return "^";
    case Op::Down: return "_";
    case Op::BarUp: return "^-";
    case Op::BarDown: return "_-";
    case Op::Gen: break;
  }
  return "?";
}

bool name_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  TermPtr run() {
    TermPtr t = term();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(pos_, "trailing input");
    return t;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() &&
           (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r' || s_[pos_] == '\n')) {
      ++pos_;
    }
  }

  TermPtr term() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError(pos_, "expected term");
    if (s_[pos_] == '(') {
      ++pos_;
      TermPtr l = term();
      Op op = operation();
      TermPtr r = term();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
      return node(op, std::move(l), std::move(r));
    }
    return name();
  }

  TermPtr name() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && name_char(s_[pos_])) ++pos_;
    if (pos_ == start) throw ParseError(pos_, "expected generator name");
    return gen(s_.substr(start, pos_ - start));
  }

  Op operation() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError(pos_, "expected operator");
    char c = s_[pos_];
    if (c != '^' && c != '_') throw ParseError(pos_, "expected operator");
    ++pos_;
    bool bar = pos_ < s_.size() && s_[pos_] == '-';
    if (bar) ++pos_;
    if (c == '^') return bar ? Op::BarUp : Op::Up;
    return bar ? Op::BarDown : Op::Down;
  }
};

}  // namespace

TermPtr parse_term(const std::string& text) { return Parser(text).run(); }

std::string term_text(const TermPtr& t) {
  if (t->op == Op::Gen) return t->name;
  return "(" + term_text(t->lhs) + " " + op_symbol(t->op) + " " + term_text(t->rhs) + ")";
}

int eval_term(const TermPtr& t, const Env& env, const FiniteBiquandle& b) {
  if (t->op == Op::Gen) {
    auto it = env.find(t->name);
    if (it == env.end()) throw std::out_of_range("unbound generator: " + t->name);
    return it->second;
  }
  int x = eval_term(t->lhs, env, b);
  int y = eval_term(t->rhs, env, b);
  switch (t->op) {
    case Op::Up: return b.up[x][y];
    case Op::Down: return b.down[x][y];
    case Op::BarUp: return b.bar_up[x][y];
    case Op::BarDown: return b.bar_down[x][y];
    case Op::Gen: break;
  }
  throw std::logic_error("bad op");
}

TopTriple make_triple(std::string base, Word up_word, Word down_word) {
  up_word = reduced(up_word);
  down_word = reduced(down_word);
  // Slide convention: drain the maximal leading base-power of the up-word
  // into the down-word.
  size_t k = 0;
  if (!up_word.empty() && up_word[0].gen == base) {
    int s = up_word[0].sign;
    while (k < up_word.size() && up_word[k].gen == base && up_word[k].sign == s) ++k;
    Word drained(k, Letter{base, -s});
    down_word = concat(drained, down_word);
    up_word.erase(up_word.begin(), up_word.begin() + k);
  }
  return {std::move(base), std::move(up_word), std::move(down_word)};
}

namespace {

TopTriple append_conjugate(const TopTriple& x, const TopTriple& y, bool to_up, int sign) {
  // Appends w^{-1} (base_y, sign) w for w = the matching word of y.
  const Word& w = to_up ? y.up_word : y.down_word;
  Word letters = inverse(w);
  letters.push_back({y.base, sign});
  letters.insert(letters.end(), w.begin(), w.end());
  if (to_up) {
    return make_triple(x.base, concat(x.up_word, letters), x.down_word);
  }
  return make_triple(x.base, x.up_word, concat(x.down_word, letters));
}

}  // namespace

TopTriple top_up(const TopTriple& x, const TopTriple& y) { return append_conjugate(x, y, true, 1); }
TopTriple top_down(const TopTriple& x, const TopTriple& y) { return append_conjugate(x, y, false, 1); }
TopTriple top_bar_up(const TopTriple& x, const TopTriple& y) { return append_conjugate(x, y, true, -1); }
TopTriple top_bar_down(const TopTriple& x, const TopTriple& y) { return append_conjugate(x, y, false, -1); }

TopTriple top_f_inverse(const TopTriple& a) {
  Word u = a.up_word;
  u.insert(u.begin(), Letter{a.base, -1});
  return make_triple(a.base, std::move(u), a.down_word);
}

TopTriple top_g_inverse(const TopTriple& a) {
  Word d = a.down_word;
  d.insert(d.begin(), Letter{a.base, -1});
  return make_triple(a.base, a.up_word, std::move(d));
}

TopTriple normalize(const TermPtr& t) {
  if (t->op == Op::Gen) return make_triple(t->name, {}, {});
  TopTriple x = normalize(t->lhs);
  TopTriple y = normalize(t->rhs);
  switch (t->op) {
    case Op::Up: return top_up(x, y);
    case Op::Down: return top_down(x, y);
    case Op::BarUp: return top_bar_up(x, y);
    case Op::BarDown: return top_bar_down(x, y);
    case Op::Gen: break;
  }
  throw std::logic_error("bad op");
}

TermPtr render(const TopTriple& t) {
  TermPtr out = gen(t.base);
  for (const Letter& l : t.up_word) {
    out = node(l.sign > 0 ? Op::Up : Op::BarUp, std::move(out), gen(l.gen));
  }
  for (const Letter& l : t.down_word) {
    out = node(l.sign > 0 ? Op::Down : Op::BarDown, std::move(out), gen(l.gen));
  }
  return out;
}

std::string triple_text(const TopTriple& t) {
  return t.base + " ^[" + word_text(t.up_word) + "] _[" + word_text(t.down_word) + "]";
}

int eval_triple(const TopTriple& t, const Env& env, const FiniteBiquandle& b) {
  auto lookup = [&](const std::string& g) {
    auto it = env.find(g);
    if (it == env.end()) throw std::out_of_range("unbound generator: " + g);
    return it->second;
  };
  int e = lookup(t.base);
  for (const Letter& l : t.up_word) {
    e = (l.sign > 0 ? b.up : b.bar_up)[e][lookup(l.gen)];
  }
  for (const Letter& l : t.down_word) {
    e = (l.sign > 0 ? b.down : b.bar_down)[e][lookup(l.gen)];
  }
  return e;
}

}  // namespace bq
