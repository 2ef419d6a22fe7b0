#pragma once

#include <cstdint>
#include <vector>

#include "dtc/digraph.hpp"

namespace dtc {

/// Weighted set-cover instance. Elements are numbered 0..element_count-1.
struct SCPInstance {
  struct Subset {
    Cost weight;
    NodeSet members;

    bool operator==(const Subset& o) const {
      return weight == o.weight && members == o.members;
    }
  };

  std::uint32_t element_count = 0;
  std::vector<Subset> subsets;

  bool operator==(const SCPInstance& o) const {
    return element_count == o.element_count && subsets == o.subsets;
  }
};

/// How nodes of the reduced graph map back to set-cover objects. Node 0 is
/// the root, node 1+i is subset i, node 1+q+k is element k and node 1+q+p+k
/// its primed twin (q subsets, p elements).
struct ReductionMap {
  NodeId root = 0;
  std::vector<NodeId> subset_node;
  std::vector<NodeId> element_node;
  std::vector<NodeId> prime_node;
  /// Arc id of (root, subset i); this is the arc carrying subset i's weight.
  std::vector<ArcId> subset_arc;
};

struct ReducedInstance {
  Digraph graph;
  ReductionMap map;
};

/// Build the covering digraph whose minimum root-branching covers correspond
/// to minimum set covers: the root buys subsets, subsets reach their
/// elements for free, and each element drags a primed twin that forces the
/// element itself into any vertex cover.
ReducedInstance reduce(const SCPInstance& scp);

/// Subset indices whose nodes are touched by `tree` in the reduced graph.
std::vector<std::uint32_t> lift_cover(const ReducedInstance& red, const ArcSet& tree);

struct ScpResult {
  bool feasible = false;
  Cost weight;
  /// Ascending subset indices; lexicographically smallest among optima.
  std::vector<std::uint32_t> chosen;
};

/// Exhaustive optimum over all 2^q subset selections. Refuses q > 20.
ScpResult exact_scp(const SCPInstance& scp);

}  // namespace dtc
