// bq: biquandle tables, link diagram presentations, and coloring invariants.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bq/acceptance.hpp"
#include "bq/invariants.hpp"
#include "json.hpp"

using namespace bq;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::string witness_text(const std::vector<int>& w) {
  std::string out = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(w[i]);
  }
  return out + ")";
}

FiniteBiquandle load_biquandle(const std::string& path) {
  Validation v = biquandle_from_json(slurp(path));
  if (!v.report.passed) {
    const AxiomFailure& f = v.report.failures.front();
    throw std::runtime_error(path + " is not a biquandle: " + f.axiom + " fails at " +
                             witness_text(f.witness));
  }
  return *v.biquandle;
}

Diagram load_diagram(const std::string& path) { return parse_diagram(slurp(path)); }

// A presentation file starts with a "kind:" line; anything else is a diagram.
bool looks_like_presentation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    return line.compare(i, 5, "kind:") == 0;
  }
  return false;
}

int run_check(const std::string& file, bool as_json) {
  Validation v = biquandle_from_json(slurp(file));
  if (as_json) {
    nlohmann::ordered_json j;
    j["valid"] = v.report.passed;
    if (v.report.passed) {
      j["order"] = v.biquandle->order;
      j["quandle"] = is_quandle(*v.biquandle);
      j["satisfies_r"] = satisfies_r(*v.biquandle);
    } else {
      j["failures"] = nlohmann::ordered_json::array();
      for (const auto& f : v.report.failures) {
        j["failures"].push_back({{"axiom", f.axiom},
                                 {"witness", f.witness},
                                 {"left", f.left},
                                 {"right", f.right}});
      }
    }
    std::cout << j.dump() << "\n";
  } else if (v.report.passed) {
    const FiniteBiquandle& b = *v.biquandle;
    std::cout << "valid: order " << b.order << "\n";
    std::cout << "quandle: " << (is_quandle(b) ? "yes" : "no") << "\n";
    std::cout << "satisfies-R: " << (satisfies_r(b) ? "yes" : "no") << "\n";
    if (auto w = r_witness(b)) {
      std::cout << "  " << r_identity_text(w->identity) << " fails at ("
                << w->triple[0] << "," << w->triple[1] << "," << w->triple[2]
                << "): " << w->left << " != " << w->right << "\n";
    }
  } else {
    for (const auto& f : v.report.failures) {
      std::cout << "invalid: " << f.axiom << " at " << witness_text(f.witness) << ": " << f.left
                << " != " << f.right << "\n";
    }
  }
  return v.report.passed ? 0 : 1;
}

int run_count(const std::string& diagram, const std::string& target, const std::string& mode,
              const std::string& batch, bool oracle, int workers) {
  CountOptions opts;
  opts.oracle = oracle;
  opts.workers = workers;

  struct Job {
    std::string diagram, target, mode;
  };
  std::vector<Job> jobs;
  if (!batch.empty()) {
    auto manifest = nlohmann::json::parse(slurp(batch));
    if (!manifest.is_array()) throw std::runtime_error(batch + ": expected a JSON array of jobs");
    for (const auto& entry : manifest) {
      jobs.push_back({entry.at("diagram").get<std::string>(),
                      entry.at("target").get<std::string>(),
                      entry.value("mode", std::string("both"))});
    }
  } else {
    jobs.push_back({diagram, target, mode});
  }

  for (const Job& job : jobs) {
    Diagram d = load_diagram(job.diagram);
    FiniteBiquandle b = load_biquandle(job.target);
    std::vector<Kind> kinds;
    if (job.mode == "both") {
      kinds = {Kind::Fundamental, Kind::Topological};
    } else {
      kinds = {kind_from_text(job.mode)};
    }
    for (Kind k : kinds) {
      CountResult r = count_colorings(d, b, k, opts);
      r.diagram = stem(job.diagram);
      r.target = stem(job.target);
      std::cout << to_json(r) << "\n";
    }
  }
  return 0;
}

int run_separate(const std::string& file, const std::string& left, const std::string& right,
                 int max_order) {
  Presentation p = presentation_from_text(slurp(file));
  Separation s = separate_terms(p, parse_term(left), parse_term(right), max_order);
  switch (s.status) {
    case Separation::Status::ProvedEqual:
      std::cout << "equal: proved\n";
      break;
    case Separation::Status::Separated: {
      std::cout << "separated: order " << s.target->order << " target\n";
      std::cout << "target: " << to_json(*s.target) << "\n";
      std::cout << "coloring:";
      for (const auto& [g, v] : s.coloring) std::cout << " " << g << "=" << v;
      std::cout << "\n";
      std::cout << "values: " << s.left << " vs " << s.right << "\n";
      break;
    }
    case Separation::Status::Unknown:
      std::cout << "unknown: no separating target through order " << max_order << "\n";
      break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"biquandle tables, diagram presentations, and coloring invariants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bq 0.1.0");

  std::string check_file;
  bool check_json = false;
  auto* check = app.add_subcommand("check", "validate a biquandle table file");
  check->add_option("file", check_file, "JSON file with up/down tables")->required();
  check->add_flag("--json", check_json, "emit a JSON report");

  int enum_order = 0;
  bool enum_count = false, enum_r = false, enum_quandle = false;
  auto* en = app.add_subcommand("enumerate", "list every biquandle of a given order");
  en->add_option("order", enum_order, "order, 1 to 4")->required()->check(CLI::Range(1, 4));
  en->add_flag("--count", enum_count, "print only how many");
  en->add_flag("--satisfies-r", enum_r, "keep only operand-independent tables");
  en->add_flag("--quandle", enum_quandle, "keep only quandles");

  std::string pres_diagram, pres_kind = "fundamental";
  bool pres_simplify = false;
  auto* pr = app.add_subcommand("present", "derive a presentation from a diagram");
  pr->add_option("diagram", pres_diagram, "diagram file")->required();
  pr->add_option("--kind", pres_kind, "fundamental or topological")
      ->check(CLI::IsMember({"fundamental", "topological"}));
  pr->add_flag("--simplify", pres_simplify, "eliminate generators first");

  std::string simp_file, simp_kind = "fundamental";
  auto* si = app.add_subcommand("simplify", "eliminate generators from a presentation");
  si->add_option("file", simp_file, "presentation file, or a diagram file")->required();
  si->add_option("--kind", simp_kind, "kind to use for diagram inputs")
      ->check(CLI::IsMember({"fundamental", "topological"}));

  std::string cnt_diagram, cnt_target, cnt_mode = "both", cnt_batch;
  bool cnt_oracle = false;
  int cnt_workers = 0;
  auto* co = app.add_subcommand("count", "count colorings of a diagram in a finite target");
  co->add_option("diagram", cnt_diagram, "diagram file");
  co->add_option("target", cnt_target, "biquandle JSON file");
  co->add_option("--mode", cnt_mode, "fundamental, topological, or both")
      ->check(CLI::IsMember({"fundamental", "topological", "both"}));
  co->add_flag("--oracle", cnt_oracle, "use the reference search instead of propagation");
  co->add_option("--workers", cnt_workers, "thread cap, 0 = automatic");
  co->add_option("--batch", cnt_batch, "JSON manifest: [{diagram, target, mode?}, ...]");

  std::string norm_term;
  auto* no = app.add_subcommand("normalize", "print the normal form of a term");
  no->add_option("term", norm_term, "term, e.g. '(a ^ (b _- c))'")->required();

  std::string sep_file, sep_left, sep_right;
  int sep_max = 3;
  auto* se = app.add_subcommand("separate",
                                "look for a coloring that tells two terms apart");
  se->add_option("presentation", sep_file, "presentation file")->required();
  se->add_option("left", sep_left, "first term")->required();
  se->add_option("right", sep_right, "second term")->required();
  se->add_option("--max-order", sep_max, "largest target order to try")->check(CLI::Range(1, 4));

  std::string vp_dir = "fixtures";
  bool vp_list = false;
  std::vector<int> vp_criteria;
  auto* vp = app.add_subcommand("verify-paper", "run the acceptance checks");
  vp->add_option("--fixtures", vp_dir, "fixtures directory");
  vp->add_flag("--list", vp_list, "list the criteria without running them");
  vp->add_option("criteria", vp_criteria, "criterion numbers to run")->check(CLI::Range(1, 9));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*co && cnt_batch.empty() && (cnt_diagram.empty() || cnt_target.empty())) {
    std::cerr << "count: need a diagram and a target, or --batch\n";
    return 2;
  }

  try {
    if (*check) return run_check(check_file, check_json);

    if (*en) {
      std::vector<FiniteBiquandle> all = enumerate_biquandles(enum_order);
      std::vector<FiniteBiquandle> kept;
      for (auto& b : all) {
        if (enum_r && !satisfies_r(b)) continue;
        if (enum_quandle && !is_quandle(b)) continue;
        kept.push_back(std::move(b));
      }
      if (enum_count) {
        std::cout << kept.size() << "\n";
      } else {
        for (const auto& b : kept) std::cout << to_json(b) << "\n";
      }
      return 0;
    }

    if (*pr) {
      Diagram d = load_diagram(pres_diagram);
      Presentation p = pres_kind == "fundamental" ? fundamental_presentation(d)
                                                  : topological_presentation(d);
      if (pres_simplify) p = tietze_eliminate(p);
      std::cout << presentation_text(p);
      return 0;
    }

    if (*si) {
      std::string text = slurp(simp_file);
      Presentation p;
      if (looks_like_presentation(text)) {
        p = presentation_from_text(text);
      } else {
        Diagram d = parse_diagram(text);
        p = simp_kind == "fundamental" ? fundamental_presentation(d)
                                       : topological_presentation(d);
      }
      std::cout << presentation_text(tietze_eliminate(p));
      return 0;
    }

    if (*co) return run_count(cnt_diagram, cnt_target, cnt_mode, cnt_batch, cnt_oracle,
                              cnt_workers);

    if (*no) {
      std::cout << triple_text(normalize(parse_term(norm_term))) << "\n";
      return 0;
    }

    if (*se) return run_separate(sep_file, sep_left, sep_right, sep_max);

    if (*vp) {
      if (vp_list) {
        auto titles = acceptance_titles();
        for (size_t i = 0; i < titles.size(); ++i) {
          std::cout << (i + 1) << ": " << titles[i] << "\n";
        }
        return 0;
      }
      auto results = run_acceptance(vp_dir, std::cout, vp_criteria);
      for (const auto& r : results) {
        if (!r.passed) return 1;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
