#pragma once

#include <string>

#include "dtc/io.hpp"

namespace fixtures {

/// Two-arc chain: 0 -(2)-> 1 -(1)-> 2. From root 0 the only cover buys the
/// first arc; from root 1 the empty tree already covers; root 2 is
/// infeasible because {0,1} has no incoming arc.
inline const char* kChain =
    "nodes 3\n"
    "arc 0 1 2\n"
    "arc 1 2 1\n";

/// Diamond with a tail: 0 -(1)-> 1, 0 -(2)-> 2, both reach 3 for free,
/// 3 -(0)-> 4. The greedy covers critical 3 through the cheaper side.
inline const char* kDiamond =
    "nodes 5\n"
    "arc 0 1 1\n"
    "arc 0 2 2\n"
    "arc 1 3 0\n"
    "arc 2 3 0\n"
    "arc 3 4 0\n";

/// Expensive entry into a free cycle: 0 -(5)-> 1 -(0)-> 2 <-(0)-> 3.
/// From root 0 the connectivity phase must buy the single entry arc.
inline const char* kCycleEntry =
    "nodes 4\n"
    "arc 0 1 5\n"
    "arc 1 2 0\n"
    "arc 2 3 0\n"
    "arc 3 2 0\n";

inline dtc::Digraph graph(const char* text) {
  return dtc::parse_instance(text).graph;
}

}  // namespace fixtures
