#include "bq/invariants.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <json.hpp>

namespace bq {

std::string to_json(const CountResult& r) {
  nlohmann::ordered_json j;
  j["diagram"] = r.diagram;
  j["target"] = r.target;
  j["mode"] = kind_text(r.mode);
  j["count"] = r.count;
  j["ms"] = r.ms;
  return j.dump();
}

int worker_count(int requested) {
  int w = requested > 0 ? requested : (int)std::thread::hardware_concurrency();
  if (w < 1) w = 1;
  if (const char* cap = std::getenv("BQ_WORKERS")) {
    int c = std::atoi(cap);
    if (c >= 1 && c < w) w = c;
  }
  return w;
}

namespace {

// Memoized check of the operand-independence schema over the element set
// encoded in a bitmask. A violation persists under adding elements, so this
// is safe to use as an incremental prune.
class RSchema {
 public:
  explicit RSchema(const FiniteBiquandle& b) : b_(b) {
    if (b.order > 64) {
      throw std::invalid_argument("topological mode supports targets of order at most 64");
    }
  }

  bool ok(uint64_t mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    std::vector<int> elems;
    for (int v = 0; v < b_.order; ++v) {
      if (mask >> v & 1) elems.push_back(v);
    }
    bool good = true;
    for (int a : elems) {
      for (int b : elems) {
        for (int c : elems) {
          if (b_.up[a][b_.down[b][c]] != b_.up[a][b] ||
              b_.bar_up[a][b_.down[b][c]] != b_.bar_up[a][b] ||
              b_.down[a][b_.up[b][c]] != b_.down[a][b] ||
              b_.bar_down[a][b_.up[b][c]] != b_.bar_down[a][b]) {
            good = false;
            goto done;
          }
        }
      }
    }
  done:
    memo_[mask] = good;
    return good;
  }

 private:
  const FiniteBiquandle& b_;
  std::unordered_map<uint64_t, bool> memo_;
};

// Crossing with semiarc names resolved to indexes.
struct CIdx {
  int sign, u, o, u2, o2;
};

std::vector<CIdx> index_crossings(const Diagram& d) {
  std::map<std::string, int> idx;
  for (size_t i = 0; i < d.semiarcs.size(); ++i) idx[d.semiarcs[i]] = (int)i;
  std::vector<CIdx> out;
  out.reserve(d.crossings.size());
  for (const Crossing& c : d.crossings) {
    out.push_back({c.sign, idx.at(c.under_in), idx.at(c.over_in), idx.at(c.under_out),
                   idx.at(c.over_out)});
  }
  return out;
}

bool crossings_hold(const std::vector<CIdx>& cx, const FiniteBiquandle& b, const Coloring& col) {
  for (const CIdx& c : cx) {
    if (c.sign > 0) {
      if (b.up[col[c.u]][col[c.o]] != col[c.u2]) return false;
      if (b.down[col[c.o]][col[c.u]] != col[c.o2]) return false;
    } else {
      if (b.bar_up[col[c.u]][col[c.o]] != col[c.u2]) return false;
      if (b.bar_down[col[c.o]][col[c.u]] != col[c.o2]) return false;
    }
  }
  return true;
}

// Deterministic evaluation plan: a few seed semiarcs are free choices, every
// other semiarc is a single table lookup from two already-known ones.
struct Schedule {
  enum Tbl { UP, DN, BU, BD, IUP, IDN, IBU, IBD };
  struct Step {
    bool seed;
    int arc;
    Tbl tbl;
    int p, q;  // value = tbl[col[p]][col[q]]
  };
  std::vector<Step> steps;
  std::vector<int> seeds;
  Table iup, idn, ibu, ibd;  // column inverses of the four operation tables

  const Table& table(Tbl t, const FiniteBiquandle& b) const {
    switch (t) {
      case UP: return b.up;
      case DN: return b.down;
      case BU: return b.bar_up;
      case BD: return b.bar_down;
      case IUP: return iup;
      case IDN: return idn;
      case IBU: return ibu;
      case IBD: return ibd;
    }
    throw std::logic_error("bad table tag");
  }
};

Schedule build_schedule(const Diagram& d, const FiniteBiquandle& b) {
  int n = b.order;
  Schedule s;
  auto invert = [&](const Table& t) {
    Table inv(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a) {
      for (int c = 0; c < n; ++c) inv[t[a][c]][c] = a;
    }
    return inv;
  };
  s.iup = invert(b.up);
  s.idn = invert(b.down);
  s.ibu = invert(b.bar_up);
  s.ibd = invert(b.bar_down);

  auto cx = index_crossings(d);
  size_t arcs = d.semiarcs.size();
  std::vector<bool> known(arcs, false);
  size_t known_count = 0;

  auto solve = [&](int arc, Schedule::Tbl tbl, int p, int q) {
    s.steps.push_back({false, arc, tbl, p, q});
    known[arc] = true;
    ++known_count;
  };
  auto closure = [&]() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const CIdx& c : cx) {
        bool ku = known[c.u], ko = known[c.o], ku2 = known[c.u2], ko2 = known[c.o2];
        bool pos = c.sign > 0;
        if (ku && ko && !ku2) {
          solve(c.u2, pos ? Schedule::UP : Schedule::BU, c.u, c.o);
          progress = true;
        } else if (ku && ko && !ko2) {
          solve(c.o2, pos ? Schedule::DN : Schedule::BD, c.o, c.u);
          progress = true;
        } else if (ku2 && ko2 && !ku) {
          solve(c.u, pos ? Schedule::BU : Schedule::UP, c.u2, c.o2);
          progress = true;
        } else if (ku2 && ko2 && !ko) {
          solve(c.o, pos ? Schedule::BD : Schedule::DN, c.o2, c.u2);
          progress = true;
        } else if (ko && ku2 && !ku) {
          solve(c.u, pos ? Schedule::IUP : Schedule::IBU, c.u2, c.o);
          progress = true;
        } else if (ku && ko2 && !ko) {
          solve(c.o, pos ? Schedule::IDN : Schedule::IBD, c.o2, c.u);
          progress = true;
        }
      }
    }
  };

  auto seed = [&](int arc) {
    s.steps.push_back({true, arc, Schedule::UP, 0, 0});
    s.seeds.push_back(arc);
    known[arc] = true;
    ++known_count;
    closure();
  };

  std::map<std::string, int> idx;
  for (size_t i = 0; i < arcs; ++i) idx[d.semiarcs[i]] = (int)i;
  for (const auto& comp : components(d)) {
    int first = idx.at(comp.front());
    if (!known[first]) seed(first);
  }
  while (known_count < arcs) {
    for (size_t i = 0; i < arcs; ++i) {
      if (!known[i]) {
        seed((int)i);
        break;
      }
    }
  }
  return s;
}

uint64_t checked_pow(uint64_t base, size_t exp) {
  uint64_t out = 1;
  for (size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > (uint64_t(1) << 62) / base) {
      throw std::invalid_argument("coloring search space is too large");
    }
    out *= base;
  }
  return out;
}

// Shared core of counting and enumeration: walk seed assignments in
// [lo, hi), derive the full coloring, keep the valid ones.
template <typename Sink>
void scan_assignments(const Schedule& sched, const std::vector<CIdx>& cx,
                      const FiniteBiquandle& b, Kind mode, uint64_t lo, uint64_t hi,
                      size_t arcs, Sink&& sink) {
  int n = b.order;
  std::optional<RSchema> schema;
  if (mode == Kind::Topological) schema.emplace(b);
  Coloring col(arcs, 0);
  std::vector<int> seedvals(sched.seeds.size(), 0);
  for (uint64_t index = lo; index < hi; ++index) {
    uint64_t rest = index;
    for (size_t i = sched.seeds.size(); i-- > 0;) {
      seedvals[i] = (int)(rest % n);
      rest /= n;
    }
    size_t next_seed = 0;
    for (const auto& st : sched.steps) {
      if (st.seed) {
        col[st.arc] = seedvals[next_seed++];
      } else {
        col[st.arc] = sched.table(st.tbl, b)[col[st.p]][col[st.q]];
      }
    }
    if (!crossings_hold(cx, b, col)) continue;
    if (schema) {
      uint64_t mask = 0;
      for (int v : col) mask |= uint64_t(1) << v;
      if (!schema->ok(mask)) continue;
    }
    sink(col);
  }
}

long long count_range_parallel(const Schedule& sched, const std::vector<CIdx>& cx,
                               const FiniteBiquandle& b, Kind mode, uint64_t space,
                               size_t arcs, int workers) {
  if (workers <= 1 || space < 4096) {
    long long count = 0;
    scan_assignments(sched, cx, b, mode, 0, space, arcs, [&](const Coloring&) { ++count; });
    return count;
  }
  std::vector<long long> partial(workers, 0);
  std::vector<std::thread> pool;
  uint64_t chunk = space / workers + 1;
  for (int w = 0; w < workers; ++w) {
    uint64_t lo = std::min(space, chunk * w);
    uint64_t hi = std::min(space, chunk * (w + 1));
    pool.emplace_back([&, w, lo, hi] {
      scan_assignments(sched, cx, b, mode, lo, hi, arcs, [&](const Coloring&) { ++partial[w]; });
    });
  }
  for (auto& t : pool) t.join();
  long long total = 0;
  for (long long c : partial) total += c;
  return total;
}

// A brute plan: every semiarc is a seed.
Schedule brute_schedule(size_t arcs) {
  Schedule s;
  for (size_t i = 0; i < arcs; ++i) {
    s.steps.push_back({true, (int)i, Schedule::UP, 0, 0});
    s.seeds.push_back((int)i);
  }
  return s;
}

}  // namespace

CountResult count_colorings(const Diagram& d, const FiniteBiquandle& b, Kind mode,
                            const CountOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  auto cx = index_crossings(d);
  size_t arcs = d.semiarcs.size();
  Schedule sched = opts.oracle ? brute_schedule(arcs) : build_schedule(d, b);
  uint64_t space = checked_pow((uint64_t)b.order, sched.seeds.size());
  long long count =
      count_range_parallel(sched, cx, b, mode, space, arcs, worker_count(opts.workers));
  CountResult r;
  r.mode = mode;
  r.count = count;
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
             .count();
  return r;
}

namespace {

std::vector<Coloring> enumerate_with(const Schedule& sched, const Diagram& d,
                                     const FiniteBiquandle& b, Kind mode) {
  auto cx = index_crossings(d);
  size_t arcs = d.semiarcs.size();
  uint64_t space = checked_pow((uint64_t)b.order, sched.seeds.size());
  std::vector<Coloring> out;
  scan_assignments(sched, cx, b, mode, 0, space, arcs,
                   [&](const Coloring& c) { out.push_back(c); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Coloring> enumerate_colorings(const Diagram& d, const FiniteBiquandle& b, Kind mode) {
  return enumerate_with(build_schedule(d, b), d, b, mode);
}

std::vector<Coloring> enumerate_colorings_brute(const Diagram& d, const FiniteBiquandle& b,
                                                Kind mode) {
  return enumerate_with(brute_schedule(d.semiarcs.size()), d, b, mode);
}

namespace {

// Relations compiled to generator indexes for fast repeated evaluation.
struct CTerm {
  Op op = Op::Gen;
  int gidx = -1;
  const CTerm* lhs = nullptr;
  const CTerm* rhs = nullptr;
};

class HomSearch {
 public:
  HomSearch(const Presentation& p, const FiniteBiquandle& b) : p_(p), b_(b) {
    for (size_t i = 0; i < p.generators.size(); ++i) gidx_[p.generators[i]] = (int)i;
    for (const auto& [l, r] : p.relations) {
      rels_.emplace_back(compile(l), compile(r));
    }
    build_order();
    if (p.kind == Kind::Topological) schema_.emplace(b);
  }

  // Runs the backtracking search, handing each solution (as the environment
  // vector) to the sink.
  template <typename Sink>
  void run(Sink&& sink) {
    env_.assign(p_.generators.size(), -1);
    descend(0, 0, sink);
  }

  const std::vector<std::string>& gens() const { return p_.generators; }

 private:
  const Presentation& p_;
  const FiniteBiquandle& b_;
  std::map<std::string, int> gidx_;
  std::deque<CTerm> arena_;
  std::vector<std::pair<const CTerm*, const CTerm*>> rels_;
  std::vector<int> order_;                                  // position -> generator index
  std::vector<std::vector<size_t>> ready_;                  // position -> relation ids
  std::optional<RSchema> schema_;
  std::vector<int> env_;

  const CTerm* compile(const TermPtr& t) {
    CTerm c;
    if (t->op == Op::Gen) {
      c.op = Op::Gen;
      c.gidx = gidx_.at(t->name);
    } else {
      c.op = t->op;
      c.lhs = compile(t->lhs);
      c.rhs = compile(t->rhs);
    }
    arena_.push_back(c);
    return &arena_.back();
  }

  int eval(const CTerm* t) const {
    if (t->op == Op::Gen) return env_[t->gidx];
    int x = eval(t->lhs), y = eval(t->rhs);
    switch (t->op) {
      case Op::Up: return b_.up[x][y];
      case Op::Down: return b_.down[x][y];
      case Op::BarUp: return b_.bar_up[x][y];
      case Op::BarDown: return b_.bar_down[x][y];
      case Op::Gen: break;
    }
    throw std::logic_error("bad op");
  }

  static void gens_in(const CTerm* t, std::vector<int>& out) {
    if (t->op == Op::Gen) {
      out.push_back(t->gidx);
    } else {
      gens_in(t->lhs, out);
      gens_in(t->rhs, out);
    }
  }

  // Greedy assignment order: repeatedly take the relation with the fewest
  // still-unassigned generators and append them, so relations become
  // checkable as early as possible.
  void build_order() {
    size_t ngens = p_.generators.size();
    std::vector<std::vector<int>> relgens(rels_.size());
    for (size_t i = 0; i < rels_.size(); ++i) {
      gens_in(rels_[i].first, relgens[i]);
      gens_in(rels_[i].second, relgens[i]);
      std::sort(relgens[i].begin(), relgens[i].end());
      relgens[i].erase(std::unique(relgens[i].begin(), relgens[i].end()), relgens[i].end());
    }
    std::vector<bool> seen(ngens, false);
    std::vector<bool> used(rels_.size(), false);
    auto unseen = [&](size_t i) {
      size_t k = 0;
      for (int g : relgens[i]) {
        if (!seen[g]) ++k;
      }
      return k;
    };
    for (size_t round = 0; round < rels_.size(); ++round) {
      size_t best = rels_.size();
      for (size_t i = 0; i < rels_.size(); ++i) {
        if (!used[i] && (best == rels_.size() || unseen(i) < unseen(best))) best = i;
      }
      used[best] = true;
      for (int g : relgens[best]) {
        if (!seen[g]) {
          order_.push_back(g);
          seen[g] = true;
        }
      }
    }
    for (size_t g = 0; g < ngens; ++g) {
      if (!seen[g]) order_.push_back((int)g);
    }
    std::vector<int> pos(ngens, 0);
    for (size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = (int)i;
    ready_.assign(order_.size() + 1, {});
    for (size_t i = 0; i < rels_.size(); ++i) {
      int last = 0;
      for (int g : relgens[i]) last = std::max(last, pos[g]);
      ready_[relgens[i].empty() ? 0 : last].push_back(i);
    }
  }

  template <typename Sink>
  void descend(size_t level, uint64_t mask, Sink&& sink) {
    if (level == order_.size()) {
      sink(env_);
      return;
    }
    int g = order_[level];
    for (int v = 0; v < b_.order; ++v) {
      env_[g] = v;
      uint64_t mask2 = mask | (uint64_t(1) << v);
      if (schema_ && !schema_->ok(mask2)) continue;
      bool ok = true;
      for (size_t ri : ready_[level]) {
        if (eval(rels_[ri].first) != eval(rels_[ri].second)) {
          ok = false;
          break;
        }
      }
      if (ok) descend(level + 1, mask2, sink);
    }
    env_[g] = -1;
  }
};

}  // namespace

long long hom_count(const Presentation& p, const FiniteBiquandle& b) {
  HomSearch search(p, b);
  long long count = 0;
  search.run([&](const std::vector<int>&) { ++count; });
  return count;
}

std::vector<Env> enumerate_homs(const Presentation& p, const FiniteBiquandle& b) {
  HomSearch search(p, b);
  std::vector<Env> out;
  search.run([&](const std::vector<int>& env) {
    Env e;
    for (size_t i = 0; i < p.generators.size(); ++i) e[p.generators[i]] = env[i];
    out.push_back(std::move(e));
  });
  std::sort(out.begin(), out.end(), [&](const Env& a, const Env& b2) {
    for (const auto& g : p.generators) {
      int va = a.at(g), vb = b2.at(g);
      if (va != vb) return va < vb;
    }
    return false;
  });
  return out;
}

std::optional<Distinction> distinguish(const Diagram& left, const Diagram& right,
                                       const std::vector<FiniteBiquandle>& targets, Kind mode) {
  for (size_t i = 0; i < targets.size(); ++i) {
    long long cl = count_colorings(left, targets[i], mode).count;
    long long cr = count_colorings(right, targets[i], mode).count;
    if (cl != cr) return Distinction{i, cl, cr};
  }
  return std::nullopt;
}

Separation separate_terms(const Presentation& p, const TermPtr& t1, const TermPtr& t2,
                          int max_order) {
  for (const auto& t : {t1, t2}) {
    for (const auto& g : generators_of(t)) {
      if (std::find(p.generators.begin(), p.generators.end(), g) == p.generators.end()) {
        throw std::invalid_argument("term uses undeclared generator '" + g + "'");
      }
    }
  }
  Separation sep;
  if (term_eq(t1, t2)) {
    sep.status = Separation::Status::ProvedEqual;
    return sep;
  }
  if (p.kind == Kind::Topological && normalize(t1) == normalize(t2)) {
    sep.status = Separation::Status::ProvedEqual;
    return sep;
  }
  for (int order = 1; order <= max_order; ++order) {
    for (const FiniteBiquandle& b : enumerate_biquandles(order)) {
      for (const Env& h : enumerate_homs(p, b)) {
        int v1 = eval_term(t1, h, b);
        int v2 = eval_term(t2, h, b);
        if (v1 != v2) {
          sep.status = Separation::Status::Separated;
          sep.target = b;
          sep.coloring = h;
          sep.left = v1;
          sep.right = v2;
          return sep;
        }
      }
    }
  }
  sep.status = Separation::Status::Unknown;
  return sep;
}

}  // namespace bq
