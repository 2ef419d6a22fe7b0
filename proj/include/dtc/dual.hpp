#pragma once

#include <vector>

#include "dtc/cost.hpp"
#include "dtc/index_set.hpp"

namespace dtc {

/// Which mechanism produced a dual entry. Cut entries pay for saturating an
/// incoming cut (certificate letter B); greedy entries pay for covering
/// critical nodes through the harmonic-priced greedy rounds (letter T).
enum class DualFamily { kCut, kGreedy };

inline char family_letter(DualFamily f) { return f == DualFamily::kCut ? 'B' : 'T'; }

struct DualEntry {
  NodeSet set;
  Cost value;
  DualFamily family = DualFamily::kCut;

  bool operator==(const DualEntry& o) const {
    return set == o.set && value == o.value && family == o.family;
  }
};

/// Append-only record of every dual payment the solver makes, plus the primal
/// cost attributed to each family (c1 for cut rounds, c2 for greedy rounds).
struct DualLedger {
  std::vector<DualEntry> entries;
  Cost objective;
  Cost c1_total;
  Cost c2_total;

  void add(NodeSet set, Cost value, DualFamily family) {
    objective += value;
    entries.push_back({std::move(set), std::move(value), family});
  }

  Cost family_total(DualFamily f) const {
    Cost t;
    for (const auto& e : entries)
      if (e.family == f) t += e.value;
    return t;
  }
};

}  // namespace dtc
