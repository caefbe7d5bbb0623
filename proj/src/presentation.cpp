#include "bq/presentation.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace bq {

std::string kind_text(Kind k) {
  return k == Kind::Fundamental ? "fundamental" : "topological";
}

Kind kind_from_text(const std::string& s) {
  if (s == "fundamental") return Kind::Fundamental;
  if (s == "topological") return Kind::Topological;
  throw std::invalid_argument("unknown presentation kind '" + s + "'");
}

namespace {

Presentation from_diagram(const Diagram& d, Kind kind) {
  Presentation p;
  p.kind = kind;
  p.generators = d.semiarcs;
  p.relations = crossing_relations(d);
  return p;
}

}  // namespace

Presentation fundamental_presentation(const Diagram& d) {
  return from_diagram(d, Kind::Fundamental);
}

Presentation topological_presentation(const Diagram& d) {
  return from_diagram(d, Kind::Topological);
}

std::vector<std::pair<TermPtr, TermPtr>> materialize_r(const std::vector<std::string>& gens) {
  std::vector<std::pair<TermPtr, TermPtr>> out;
  out.reserve(4 * gens.size() * gens.size() * gens.size());
  for (const auto& a : gens) {
    for (const auto& b : gens) {
      for (const auto& c : gens) {
        out.emplace_back(node(Op::Up, gen(a), node(Op::Down, gen(b), gen(c))),
                         node(Op::Up, gen(a), gen(b)));
        out.emplace_back(node(Op::BarUp, gen(a), node(Op::Down, gen(b), gen(c))),
                         node(Op::BarUp, gen(a), gen(b)));
        out.emplace_back(node(Op::Down, gen(a), node(Op::Up, gen(b), gen(c))),
                         node(Op::Down, gen(a), gen(b)));
        out.emplace_back(node(Op::BarDown, gen(a), node(Op::Up, gen(b), gen(c))),
                         node(Op::BarDown, gen(a), gen(b)));
      }
    }
  }
  return out;
}

namespace {

Op inverse_op(Op op) {
  switch (op) {
    case Op::Up: return Op::BarUp;
    case Op::BarUp: return Op::Up;
    case Op::Down: return Op::BarDown;
    case Op::BarDown: return Op::Down;
    case Op::Gen: break;
  }
  throw std::logic_error("no inverse for a leaf");
}

struct Move {
  std::string g;
  TermPtr def;
  size_t rel_index;
};

class Eliminator {
 public:
  explicit Eliminator(const Presentation& p)
      : top_(p.kind == Kind::Topological), gens_(p.generators), rels_(p.relations) {
    if (top_) renormalize();
  }

  Presentation run() {
    for (;;) {
      drop_trivial();
      auto mv = find_move();
      if (!mv) break;
      eliminate(*mv);
    }
    if (top_) transport();
    Presentation out;
    out.kind = top_ ? Kind::Topological : Kind::Fundamental;
    out.generators = gens_;
    out.relations = rels_;
    return out;
  }

 private:
  bool top_;
  std::vector<std::string> gens_;
  std::vector<std::pair<TermPtr, TermPtr>> rels_;

  static TermPtr nf(const TermPtr& t) { return render(normalize(t)); }

  void renormalize() {
    for (auto& [l, r] : rels_) {
      l = nf(l);
      r = nf(r);
    }
  }

  bool sides_equal(const TermPtr& l, const TermPtr& r) const {
    return top_ ? normalize(l) == normalize(r) : term_eq(l, r);
  }

  void drop_trivial() {
    std::erase_if(rels_, [&](const auto& lr) { return sides_equal(lr.first, lr.second); });
  }

  // One bar-solve orientation: lhs is (s op t) with s a bare generator that
  // occurs nowhere else in the relation.
  std::optional<Move> solve_at(size_t i, bool down_type) const {
    const auto& [l, r] = rels_[i];
    bool matches = down_type ? (l->op == Op::Down || l->op == Op::BarDown)
                             : (l->op == Op::Up || l->op == Op::BarUp);
    if (!matches || l->lhs->op != Op::Gen) return std::nullopt;
    const std::string& s = l->lhs->name;
    if (generators_of(r).count(s) || generators_of(l->rhs).count(s)) return std::nullopt;
    return Move{s, node(inverse_op(l->op), r, l->rhs), i};
  }

  std::optional<Move> find_move() const {
    for (size_t i = 0; i < rels_.size(); ++i) {
      if (auto mv = solve_at(i, /*down_type=*/true)) return mv;
    }
    for (size_t i = 0; i < rels_.size(); ++i) {
      const auto& [l, r] = rels_[i];
      if (r->op == Op::Gen && !generators_of(l).count(r->name)) return Move{r->name, l, i};
      if (l->op == Op::Gen && !generators_of(r).count(l->name)) return Move{l->name, r, i};
    }
    for (size_t i = 0; i < rels_.size(); ++i) {
      if (auto mv = solve_at(i, /*down_type=*/false)) return mv;
    }
    // Multi-step peel: unwind a compound side onto the other one.
    for (size_t i = 0; i < rels_.size(); ++i) {
      const auto& [l, r] = rels_[i];
      for (const auto& [side, other] : {std::pair{l, r}, std::pair{r, l}}) {
        if (side->op == Op::Gen) continue;
        TermPtr cur = side, acc = other;
        while (cur->op != Op::Gen) {
          acc = node(inverse_op(cur->op), acc, cur->rhs);
          cur = cur->lhs;
        }
        if (!generators_of(acc).count(cur->name)) return Move{cur->name, acc, i};
      }
    }
    return std::nullopt;
  }

  void eliminate(const Move& m) {
    rels_.erase(rels_.begin() + (long)m.rel_index);
    for (auto& [l, r] : rels_) {
      l = substitute(l, m.g, m.def);
      r = substitute(r, m.g, m.def);
    }
    if (top_) renormalize();
    std::erase(gens_, m.g);
  }

  // Rewrites every relation as (lhs shifted by the inverse of the rhs words)
  // = (bare rhs base). The appended maps are bijections, so this preserves
  // the solution set; it can expose new native eliminations, so re-enter.
  void transport() {
    for (;;) {
      for (auto& [l, r] : rels_) {
        TopTriple lt = normalize(l);
        TopTriple rt = normalize(r);
        TopTriple shifted = make_triple(lt.base, concat(lt.up_word, inverse(rt.up_word)),
                                        concat(lt.down_word, inverse(rt.down_word)));
        l = render(shifted);
        r = gen(rt.base);
      }
      drop_trivial();
      auto mv = find_move();
      if (!mv) break;
      while (mv) {
        eliminate(*mv);
        drop_trivial();
        mv = find_move();
      }
    }
  }
};

}  // namespace

Presentation tietze_eliminate(const Presentation& p) { return Eliminator(p).run(); }

std::string presentation_text(const Presentation& p) {
  std::ostringstream out;
  out << "kind: " << kind_text(p.kind) << "\n";
  out << "gens:";
  for (const auto& g : p.generators) out << ' ' << g;
  out << "\n";
  for (const auto& [l, r] : p.relations) {
    out << term_text(l) << " = " << term_text(r) << "\n";
  }
  return out.str();
}

Presentation presentation_from_text(const std::string& text) {
  Presentation p;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  bool have_kind = false, have_gens = false;
  std::set<std::string> declared;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!have_kind) {
      if (line.compare(first, 5, "kind:") != 0) throw ParseError(lineno, "expected 'kind:' line");
      std::istringstream ls(line.substr(first + 5));
      std::string k;
      if (!(ls >> k)) throw ParseError(lineno, "missing kind");
      try {
        p.kind = kind_from_text(k);
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
      }
      have_kind = true;
    } else if (!have_gens) {
      if (line.compare(first, 5, "gens:") != 0) throw ParseError(lineno, "expected 'gens:' line");
      std::istringstream ls(line.substr(first + 5));
      std::string g;
      while (ls >> g) {
        if (!declared.insert(g).second) throw ParseError(lineno, "duplicate generator '" + g + "'");
      }
      p.generators.assign(declared.begin(), declared.end());
      have_gens = true;
    } else {
      size_t eq = line.find('=');
      if (eq == std::string::npos) throw ParseError(lineno, "relation needs '='");
      TermPtr l = parse_term(line.substr(0, eq));
      TermPtr r = parse_term(line.substr(eq + 1));
      for (const auto& t : {l, r}) {
        for (const auto& g : generators_of(t)) {
          if (!declared.count(g)) throw ParseError(lineno, "undeclared generator '" + g + "'");
        }
      }
      p.relations.emplace_back(std::move(l), std::move(r));
    }
  }
  if (!have_kind || !have_gens) throw ParseError(lineno, "presentation needs kind and gens lines");
  return p;
}

}  // namespace bq
