#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bq/algebra.hpp"
#include "bq/diagram.hpp"
#include "bq/presentation.hpp"

namespace bq {

// A coloring assigns a target element to every semiarc, aligned with
// Diagram::semiarcs.
using Coloring = std::vector<int>;

struct CountResult {
  std::string diagram, target;  // display ids, filled by callers
  Kind mode = Kind::Fundamental;
  long long count = 0;
  double ms = 0.0;
};

// {"diagram": ..., "target": ..., "mode": ..., "count": ..., "ms": ...}
std::string to_json(const CountResult& r);

// Effective worker count: `requested` if positive, otherwise the hardware
// concurrency, always capped by the BQ_WORKERS environment variable.
int worker_count(int requested = 0);

struct CountOptions {
  bool oracle = false;  // brute-force instead of propagation
  int workers = 0;      // see worker_count
};

// Counts valid colorings. Propagation derives most semiarcs from a few seed
// choices per component and splits the seed space across workers; the oracle
// path ranges over all assignments. Topological mode additionally requires
// the operand-independence schema to hold on the coloring's image (supported
// for targets of order at most 64).
CountResult count_colorings(const Diagram& d, const FiniteBiquandle& b, Kind mode,
                            const CountOptions& opts = {});

// All valid colorings in lexicographic order (propagation-based, and the
// assignment-ranging oracle used to cross-check it).
std::vector<Coloring> enumerate_colorings(const Diagram& d, const FiniteBiquandle& b, Kind mode);
std::vector<Coloring> enumerate_colorings_brute(const Diagram& d, const FiniteBiquandle& b,
                                                Kind mode);

// Number of generator assignments satisfying every relation (plus, for
// topological presentations, the operand-independence schema on the image).
long long hom_count(const Presentation& p, const FiniteBiquandle& b);

// The assignments themselves, in lexicographic generator order.
std::vector<Env> enumerate_homs(const Presentation& p, const FiniteBiquandle& b);

struct Distinction {
  size_t target_index = 0;  // into the targets vector
  long long left_count = 0, right_count = 0;
};

// First target whose coloring count separates the two diagrams, if any.
std::optional<Distinction> distinguish(const Diagram& left, const Diagram& right,
                                       const std::vector<FiniteBiquandle>& targets, Kind mode);

// Tries to tell two terms apart over a presentation's coloring space.
//   ProvedEqual: syntactically equal, or (topological kind) equal triple
//                normal forms.
//   Separated:   some hom into an enumerated biquandle of order <= max_order
//                gives the terms different values; the first such target,
//                assignment and value pair are returned.
//   Unknown:     neither, within the searched range.
struct Separation {
  enum class Status { ProvedEqual, Separated, Unknown };
  Status status = Status::Unknown;
  std::optional<FiniteBiquandle> target;
  Env coloring;
  int left = 0, right = 0;
};

Separation separate_terms(const Presentation& p, const TermPtr& t1, const TermPtr& t2,
                          int max_order);

}  // namespace bq
