#include "bq/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace bq {

namespace {

void require_square(const Table& t, int n, const char* name) {
  if ((int)t.size() != n) throw std::invalid_argument(std::string(name) + " table is not " + std::to_string(n) + " rows");
  for (const auto& row : t) {
    if ((int)row.size() != n) throw std::invalid_argument(std::string(name) + " table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw std::invalid_argument(std::string(name) + " table entry out of range");
    }
  }
}

// Column b of tab as a function of the first argument; true iff a permutation.
bool column_is_perm(const Table& tab, int b) {
  int n = (int)tab.size();
  std::vector<bool> seen(n, false);
  for (int a = 0; a < n; ++a) {
    int v = tab[a][b];
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// First collision pair in column b, scanning x1 < x2 lexicographically.
std::array<int, 2> column_collision(const Table& tab, int b) {
  int n = (int)tab.size();
  for (int x1 = 0; x1 < n; ++x1) {
    for (int x2 = x1 + 1; x2 < n; ++x2) {
      if (tab[x1][b] == tab[x2][b]) return {x1, x2};
    }
  }
  return {-1, -1};  // unreachable when the column is not a permutation
}

}  // namespace

Validation validate_biquandle(const Table& up, const Table& down,
                              std::vector<std::string> labels) {
  if (up.empty()) throw std::invalid_argument("up table is empty");
  int n = (int)up.size();
  require_square(up, n, "up");
  require_square(down, n, "down");
  if (!labels.empty() && (int)labels.size() != n) {
    throw std::invalid_argument("labels size does not match order");
  }

  AxiomReport report;
  auto fail = [&](std::string axiom, std::vector<int> witness, int left, int right) {
    report.failures.push_back({std::move(axiom), std::move(witness), left, right});
  };

  // Axiom 1a/1b: every column of up and down acts bijectively.
  std::vector<bool> up_col_ok(n), down_col_ok(n);
  for (int b = 0; b < n; ++b) up_col_ok[b] = column_is_perm(up, b);
  for (int b = 0; b < n; ++b) down_col_ok[b] = column_is_perm(down, b);
  for (int b = 0; b < n; ++b) {
    if (!up_col_ok[b]) {
      auto [x1, x2] = column_collision(up, b);
      fail("axiom1-f", {b, x1, x2}, up[x1][b], up[x2][b]);
      break;
    }
  }
  for (int b = 0; b < n; ++b) {
    if (!down_col_ok[b]) {
      auto [x1, x2] = column_collision(down, b);
      fail("axiom1-g", {b, x1, x2}, down[x1][b], down[x2][b]);
      break;
    }
  }

  // Axiom 1c: S(x,y) = (y _ x, x ^ y) is a bijection on pairs.
  {
    std::vector<int> owner(n * n, -1);  // image pair -> first preimage index
    bool reported = false;
    for (int x = 0; x < n && !reported; ++x) {
      for (int y = 0; y < n && !reported; ++y) {
        int img = down[y][x] * n + up[x][y];
        if (owner[img] >= 0) {
          int x1 = owner[img] / n, y1 = owner[img] % n;
          fail("axiom1-S", {x1, y1, x, y}, down[y][x], up[x][y]);
          reported = true;
        } else {
          owner[img] = x * n + y;
        }
      }
    }
  }

  // Axiom 2: with x = f_a^{-1}(a) and y = g_a^{-1}(a), require x == a _ x and
  // y == a ^ y. Skipped for any a whose column inverse does not exist.
  for (int a = 0; a < n; ++a) {
    if (!up_col_ok[a]) continue;
    int x = -1;
    for (int c = 0; c < n; ++c) {
      if (up[c][a] == a) { x = c; break; }
    }
    if (x != down[a][x]) {
      fail("axiom2-f", {a, x}, x, down[a][x]);
      break;
    }
  }
  for (int a = 0; a < n; ++a) {
    if (!down_col_ok[a]) continue;
    int y = -1;
    for (int c = 0; c < n; ++c) {
      if (down[c][a] == a) { y = c; break; }
    }
    if (y != up[a][y]) {
      fail("axiom2-g", {a, y}, y, up[a][y]);
      break;
    }
  }

  // Axiom 3: the three exchange laws, first witness each.
  bool upint_done = false, five_done = false, downint_done = false;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (!upint_done) {
          int l = up[up[a][b]][c];
          int r = up[up[a][down[c][b]]][up[b][c]];
          if (l != r) { fail("axiom3-upint", {a, b, c}, l, r); upint_done = true; }
        }
        if (!five_done) {
          int l = up[down[a][b]][down[c][up[b][a]]];
          int r = down[up[a][c]][up[b][down[c][a]]];
          if (l != r) { fail("axiom3-five", {a, b, c}, l, r); five_done = true; }
        }
        if (!downint_done) {
          int l = down[down[a][b]][c];
          int r = down[down[a][up[c][b]]][down[b][c]];
          if (l != r) { fail("axiom3-downint", {a, b, c}, l, r); downint_done = true; }
        }
      }
    }
  }

  report.passed = report.failures.empty();
  Validation v;
  v.report = std::move(report);
  if (!v.report.passed) return v;

  FiniteBiquandle bq;
  bq.order = n;
  bq.up = up;
  bq.down = down;
  bq.labels = std::move(labels);
  // Bar tables from S^{-1}: if S(x,y) = (a,b) then b ^- a = x and a _- b = y.
  bq.bar_up.assign(n, std::vector<int>(n, 0));
  bq.bar_down.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      int a = down[y][x], b = up[x][y];
      bq.bar_up[b][a] = x;
      bq.bar_down[a][b] = y;
    }
  }
  v.biquandle = std::move(bq);
  return v;
}

bool is_quandle(const FiniteBiquandle& b) {
  for (int a = 0; a < b.order; ++a) {
    for (int c = 0; c < b.order; ++c) {
      if (b.down[a][c] != a) return false;
    }
  }
  return true;
}

std::optional<RWitness> r_witness(const FiniteBiquandle& b) {
  int n = b.order;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        int l, r;
        l = b.up[x][b.down[y][z]];
        r = b.up[x][y];
        if (l != r) return RWitness{1, {x, y, z}, l, r};
        l = b.bar_up[x][b.down[y][z]];
        r = b.bar_up[x][y];
        if (l != r) return RWitness{2, {x, y, z}, l, r};
        l = b.down[x][b.up[y][z]];
        r = b.down[x][y];
        if (l != r) return RWitness{3, {x, y, z}, l, r};
        l = b.bar_down[x][b.up[y][z]];
        r = b.bar_down[x][y];
        if (l != r) return RWitness{4, {x, y, z}, l, r};
      }
    }
  }
  return std::nullopt;
}

std::string r_identity_text(int identity) {
  switch (identity) {
    case 1: return "a ^ (b _ c) = a ^ b";
    case 2: return "a ^- (b _ c) = a ^- b";
    case 3: return "a _ (b ^ c) = a _ b";
    case 4: return "a _- (b ^ c) = a _- b";
  }
  throw std::invalid_argument("identity out of range");
}

std::vector<std::vector<int>> homomorphisms(const FiniteBiquandle& from,
                                            const FiniteBiquandle& to) {
  int n = from.order, m = to.order;
  std::vector<std::vector<int>> out;
  std::vector<int> h(n, -1);

  // h(a ^ b) == h(a) ^ h(b) is checkable once h is set on a, b and a ^ b.
  auto consistent_up_to = [&](int k) {
    for (int a = 0; a <= k; ++a) {
      for (int b = 0; b <= k; ++b) {
        int au = from.up[a][b], ad = from.down[a][b];
        if (au <= k && to.up[h[a]][h[b]] != h[au]) return false;
        if (ad <= k && to.down[h[a]][h[b]] != h[ad]) return false;
      }
    }
    return true;
  };

  auto preserves_bars = [&]() {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (h[from.bar_up[a][b]] != to.bar_up[h[a]][h[b]]) return false;
        if (h[from.bar_down[a][b]] != to.bar_down[h[a]][h[b]]) return false;
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      if (!preserves_bars()) {
        throw std::logic_error("homomorphism does not preserve bar operations");
      }
      out.push_back(h);
      return;
    }
    for (int v = 0; v < m; ++v) {
      h[k] = v;
      if (consistent_up_to(k)) self(self, k + 1);
    }
    h[k] = -1;
  };
  rec(rec, 0);
  return out;
}

namespace {

std::vector<std::vector<int>> permutations_of(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Backtracking enumeration over columns, interleaved per element
// (up column 0, down column 0, up column 1, ...), pruning with every check
// that is evaluable on the assigned columns.
class Enumerator {
 public:
  explicit Enumerator(int n)
      : n_(n),
        perms_(permutations_of(n)),
        up_(n, std::vector<int>(n, -1)),
        down_(n, std::vector<int>(n, -1)),
        up_set_(n, false),
        down_set_(n, false) {}

  std::vector<FiniteBiquandle> run() {
    place(0);
    std::sort(out_.begin(), out_.end(), [](const FiniteBiquandle& a, const FiniteBiquandle& b) {
      if (a.up != b.up) return a.up < b.up;
      return a.down < b.down;
    });
    return out_;
  }

 private:
  int n_;
  std::vector<std::vector<int>> perms_;
  Table up_, down_;
  std::vector<bool> up_set_, down_set_;
  std::vector<FiniteBiquandle> out_;

  int at(const Table& t, const std::vector<bool>& set, int a, int b) const {
    return set[b] ? t[a][b] : -1;
  }

  // -1 when some needed column is still unassigned, else 0/1 for fail/hold.
  int try_eq3(int a, int b, int c) const {
    auto U = [&](int x, int y) { return x < 0 || y < 0 ? -1 : at(up_, up_set_, x, y); };
    auto D = [&](int x, int y) { return x < 0 || y < 0 ? -1 : at(down_, down_set_, x, y); };
    {
      int l = U(U(a, b), c), r = U(U(a, D(c, b)), U(b, c));
      if (l >= 0 && r >= 0 && l != r) return 0;
    }
    {
      int l = U(D(a, b), D(c, U(b, a))), r = D(U(a, c), U(b, D(c, a)));
      if (l >= 0 && r >= 0 && l != r) return 0;
    }
    {
      int l = D(D(a, b), c), r = D(D(a, U(c, b)), D(b, c));
      if (l >= 0 && r >= 0 && l != r) return 0;
    }
    return 1;
  }

  bool partial_ok() const {
    // S injectivity over evaluable pairs.
    std::vector<bool> seen(n_ * n_, false);
    for (int x = 0; x < n_; ++x) {
      if (!down_set_[x]) continue;
      for (int y = 0; y < n_; ++y) {
        if (!up_set_[y]) continue;
        int img = down_[y][x] * n_ + up_[x][y];
        if (seen[img]) return false;
        seen[img] = true;
      }
    }
    // Axiom 2 where the inverse and its partner column exist.
    for (int a = 0; a < n_; ++a) {
      if (up_set_[a]) {
        int x = -1;
        for (int c = 0; c < n_; ++c) {
          if (up_[c][a] == a) { x = c; break; }
        }
        if (x >= 0 && down_set_[x] && down_[a][x] != x) return false;
      }
      if (down_set_[a]) {
        int y = -1;
        for (int c = 0; c < n_; ++c) {
          if (down_[c][a] == a) { y = c; break; }
        }
        if (y >= 0 && up_set_[y] && up_[a][y] != y) return false;
      }
    }
    // Axiom 3 on every fully evaluable instance.
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        for (int c = 0; c < n_; ++c) {
          if (try_eq3(a, b, c) == 0) return false;
        }
      }
    }
    return true;
  }

  void set_column(Table& t, int b, const std::vector<int>& perm) {
    for (int a = 0; a < n_; ++a) t[a][b] = perm[a];
  }

  void place(int slot) {
    if (slot == 2 * n_) {
      auto v = validate_biquandle(up_, down_);
      if (v.report.passed) out_.push_back(std::move(*v.biquandle));
      return;
    }
    int b = slot / 2;
    bool is_up = (slot % 2 == 0);
    Table& t = is_up ? up_ : down_;
    std::vector<bool>& flags = is_up ? up_set_ : down_set_;
    for (const auto& perm : perms_) {
      set_column(t, b, perm);
      flags[b] = true;
      if (partial_ok()) place(slot + 1);
      flags[b] = false;
    }
    for (int a = 0; a < n_; ++a) t[a][b] = -1;
  }
};

}  // namespace

std::vector<FiniteBiquandle> enumerate_biquandles(int order) {
  if (order < 1 || order > 4) {
    throw std::invalid_argument("enumeration supports orders 1 through 4");
  }
  return Enumerator(order).run();
}

namespace {

FiniteBiquandle from_formulas(int n, int (*fu)(int, int, int), int (*fd)(int, int, int)) {
  Table up(n, std::vector<int>(n)), down(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      up[a][b] = fu(a, b, n);
      down[a][b] = fd(a, b, n);
    }
  }
  auto v = validate_biquandle(up, down);
  if (!v.report.passed) throw std::logic_error("named biquandle failed validation");
  return *v.biquandle;
}

int mod(int x, int n) { return ((x % n) + n) % n; }

}  // namespace

FiniteBiquandle shift_cycle(int n) {
  return from_formulas(
      n, [](int a, int, int n) { return mod(a + 1, n); },
      [](int a, int, int n) { return mod(a - 1, n); });
}

FiniteBiquandle trivial_biquandle(int n) {
  return from_formulas(
      n, [](int a, int, int) { return a; }, [](int a, int, int) { return a; });
}

FiniteBiquandle dihedral3() {
  return from_formulas(
      3, [](int a, int b, int n) { return mod(2 * b - a, n); },
      [](int a, int, int) { return a; });
}

FiniteBiquandle z5_example() {
  return from_formulas(
      5, [](int a, int b, int n) { return mod(a + 4 * b, n); },
      [](int a, int, int n) { return mod(2 * a, n); });
}

std::string to_json(const FiniteBiquandle& b) {
  nlohmann::ordered_json j;
  j["order"] = b.order;
  j["up"] = b.up;
  j["down"] = b.down;
  if (!b.labels.empty()) j["labels"] = b.labels;
  return j.dump();
}

Validation biquandle_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad biquandle JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("order") || !j.contains("up") || !j.contains("down")) {
    throw std::invalid_argument("biquandle JSON needs order, up and down");
  }
  Table up, down;
  std::vector<std::string> labels;
  try {
    int order = j.at("order").get<int>();
    up = j.at("up").get<Table>();
    down = j.at("down").get<Table>();
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    if ((int)up.size() != order) throw std::invalid_argument("up table does not match order");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad biquandle JSON: ") + e.what());
  }
  return validate_biquandle(up, down, std::move(labels));
}

}  // namespace bq
