#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dtc/digraph.hpp"
#include "dtc/dual.hpp"
#include "dtc/io.hpp"
#include "dtc/solver.hpp"

namespace dtc {

struct VerificationReport {
  bool is_branching = false;
  bool is_cover = false;
  Cost cost_recomputed;
  bool dual_feasible = false;
  Cost dual_objective;
  /// cost / dual objective; absent when the objective is zero.
  std::optional<Cost> ratio_vs_dual;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Structural check of a tree given by arc ids: branching rooted at `root`
/// plus the vertex-cover property. Fills cost_recomputed; dual fields are
/// left at their defaults.
VerificationReport verify_tree_cover(const Digraph& g, NodeId root, const ArcSet& tree);

struct DualCheck {
  bool feasible = false;
  Cost objective;
  std::vector<std::string> violations;
};

/// Every entry must be a nonempty arc-inducing node set avoiding the root
/// with a positive finite value, and no arc may be charged past its cost:
/// for each arc, the values of all entries whose incoming cut contains it
/// must sum to at most the arc cost.
DualCheck check_dual_feasibility(const Digraph& g, NodeId root,
                                 const std::vector<DualEntry>& entries);

/// Full certificate verification: resolves endpoint pairs to arcs (cheapest
/// matching arc first for parallel arcs), then structural + dual checks.
VerificationReport verify_certificate(const Digraph& g, const Certificate& cert);

struct OracleResult {
  bool feasible = false;
  Cost cost;
  /// Lexicographically smallest minimum-cost tree (ascending arc ids).
  ArcSet witness;
};

/// Exhaustive minimum branching cover for one root, by enumerating all 2^m
/// arc subsets. Completely independent of the solver on purpose. Throws
/// std::invalid_argument when the graph has more than max_arcs arcs.
OracleResult exact_min_cover(const Digraph& g, NodeId root, std::uint32_t max_arcs = 18);

/// Cross-checks a solve result: structure, dual feasibility, the certified
/// inequalities cost <= 2*(cut total) + h_g*(greedy total) and
/// cost <= ratio_bound * dual, and when the exact optimum is supplied,
/// dual <= opt <= cost and cost <= ratio_bound * opt.
VerificationReport ratio_check(const Digraph& g, const SolveResult& result,
                               const std::optional<Cost>& exact_opt);

}  // namespace dtc
