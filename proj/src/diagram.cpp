#include "bq/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace bq {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return false;
  }
  return true;
}

}  // namespace

Diagram parse_diagram(const std::string& text) {
  Diagram d;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "O") {
      std::string name;
      if (!(ls >> name) || !valid_name(name)) {
        throw ParseError(lineno, "bad unknotted component line");
      }
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens");
      d.unknotted.push_back(name);
    } else if (tok == "+" || tok == "-") {
      Crossing c;
      c.sign = (tok == "+") ? 1 : -1;
      if (!(ls >> c.under_in >> c.over_in >> c.under_out >> c.over_out)) {
        throw ParseError(lineno, "crossing needs four semiarc names");
      }
      for (const std::string* s : {&c.under_in, &c.over_in, &c.under_out, &c.over_out}) {
        if (!valid_name(*s)) throw ParseError(lineno, "bad semiarc name '" + *s + "'");
      }
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens");
      d.crossings.push_back(std::move(c));
    } else {
      throw ParseError(lineno, "unknown line type '" + tok + "'");
    }
  }

  // Each semiarc is exactly one crossing input and one crossing output;
  // unknotted markers stand alone.
  std::set<std::string> ins, outs;
  auto add_once = [&](std::set<std::string>& side, const std::string& s, const char* role) {
    if (!side.insert(s).second) {
      throw ParseError(0, "semiarc '" + s + "' used twice as " + role);
    }
  };
  for (const std::string& m : d.unknotted) {
    add_once(ins, m, "an input");
    add_once(outs, m, "an output");
  }
  for (const Crossing& c : d.crossings) {
    add_once(ins, c.under_in, "an input");
    add_once(ins, c.over_in, "an input");
    add_once(outs, c.under_out, "an output");
    add_once(outs, c.over_out, "an output");
  }
  for (const std::string& s : ins) {
    if (!outs.count(s)) throw ParseError(0, "semiarc '" + s + "' has no output role");
  }
  for (const std::string& s : outs) {
    if (!ins.count(s)) throw ParseError(0, "semiarc '" + s + "' has no input role");
  }
  d.semiarcs.assign(ins.begin(), ins.end());
  return d;
}

std::string diagram_text(const Diagram& d) {
  std::ostringstream out;
  std::vector<std::string> markers = d.unknotted;
  std::sort(markers.begin(), markers.end());
  for (const std::string& m : markers) out << "O " << m << "\n";
  for (const Crossing& c : d.crossings) {
    out << (c.sign > 0 ? '+' : '-') << ' ' << c.under_in << ' ' << c.over_in << ' '
        << c.under_out << ' ' << c.over_out << "\n";
  }
  return out.str();
}

std::vector<std::pair<TermPtr, TermPtr>> crossing_relations(const Diagram& d) {
  std::vector<std::pair<TermPtr, TermPtr>> rels;
  rels.reserve(2 * d.crossings.size());
  for (const Crossing& c : d.crossings) {
    Op up_op = c.sign > 0 ? Op::Up : Op::BarUp;
    Op down_op = c.sign > 0 ? Op::Down : Op::BarDown;
    rels.emplace_back(node(up_op, gen(c.under_in), gen(c.over_in)), gen(c.under_out));
    rels.emplace_back(node(down_op, gen(c.over_in), gen(c.under_in)), gen(c.over_out));
  }
  return rels;
}

std::vector<std::vector<std::string>> components(const Diagram& d) {
  std::map<std::string, std::string> parent;
  for (const std::string& s : d.semiarcs) parent[s] = s;
  auto find = [&](std::string x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Crossing& c : d.crossings) {
    parent[find(c.under_in)] = find(c.under_out);
    parent[find(c.over_in)] = find(c.over_out);
  }
  std::map<std::string, std::vector<std::string>> groups;
  for (const std::string& s : d.semiarcs) groups[find(s)].push_back(s);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bq
