#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dtc/digraph.hpp"
#include "dtc/generate.hpp"

using namespace dtc;

namespace {

Digraph two_cycles_bridge() {
  // 0 <-> 1, 2 <-> 3, bridged by 1 -> 2, plus an isolated node 4.
  return Digraph(5, {{0, 1, Cost()},
                     {1, 0, Cost()},
                     {2, 3, Cost()},
                     {3, 2, Cost()},
                     {1, 2, Cost()}});
}

ArcSet all_arcs(const Digraph& g) {
  std::vector<std::uint32_t> ids;
  for (ArcId id = 0; id < g.arc_count(); ++id) ids.push_back(id);
  return ArcSet(std::move(ids));
}

}  // namespace

TEST_CASE("construction rejects malformed graphs") {
  CHECK_THROWS_AS(Digraph(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(Digraph(2, {{0, 2, Cost()}}), std::invalid_argument);
  CHECK_THROWS_AS(Digraph(2, {{1, 1, Cost()}}), std::invalid_argument);
  CHECK_THROWS_AS(Digraph(2, {{0, 1, Cost::infinite()}}), std::invalid_argument);
}

TEST_CASE("adjacency lists are ascending and keep parallel arcs apart") {
  Digraph g(3, {{0, 1, Cost::from_int(2)},
                {0, 1, Cost::from_int(1)},
                {1, 2, Cost()},
                {0, 2, Cost()}});
  CHECK(g.arc_count() == 4);
  CHECK(g.out_arcs(0) == std::vector<ArcId>{0, 1, 3});
  CHECK(g.in_arcs(1) == std::vector<ArcId>{0, 1});
  CHECK(g.in_arcs(0).empty());
  CHECK(g.arc(1).cost == Cost::from_int(1));
}

TEST_CASE("cuts and induced arcs partition the incidence") {
  Digraph g = two_cycles_bridge();
  NodeSet s{2, 3};
  CHECK(in_cut(g, s) == ArcSet{4});
  CHECK(out_cut(g, s).empty());
  CHECK(induced_arcs(g, s) == ArcSet{2, 3});
  NodeSet left{0, 1};
  CHECK(in_cut(g, left).empty());
  CHECK(out_cut(g, left) == ArcSet{4});
  CHECK(induced_arcs(g, left) == ArcSet{0, 1});
}

TEST_CASE("reachability respects the chosen arc subset") {
  Digraph g = two_cycles_bridge();
  CHECK(reachable_from(g, all_arcs(g), 0) == NodeSet{0, 1, 2, 3});
  CHECK(reachable_from(g, ArcSet{0, 1}, 0) == NodeSet{0, 1});
  CHECK(reachable_from(g, ArcSet{}, 3) == NodeSet{3});
  CHECK(reachable_from(g, all_arcs(g), 2) == NodeSet{2, 3});
}

TEST_CASE("vertex cover checks every arc") {
  Digraph g = two_cycles_bridge();
  CHECK(is_vertex_cover(g, NodeSet{1, 2}));
  CHECK(is_vertex_cover(g, NodeSet{0, 1, 2, 3}));
  CHECK_FALSE(is_vertex_cover(g, NodeSet{0, 3}));
  CHECK_FALSE(is_vertex_cover(g, NodeSet{}));
}

TEST_CASE("strongly connected components with normalized ids") {
  Digraph g = two_cycles_bridge();
  SccResult scc = strongly_connected_components(g, all_arcs(g));
  REQUIRE(scc.components.size() == 3);
  CHECK(scc.components[0] == NodeSet{0, 1});
  CHECK(scc.components[1] == NodeSet{2, 3});
  CHECK(scc.components[2] == NodeSet{4});
  CHECK(scc.component_of[0] == 0);
  CHECK(scc.component_of[3] == 1);
  CHECK(scc.component_of[4] == 2);
  CHECK(scc.successors[0] == std::vector<std::uint32_t>{1});
  CHECK(scc.successors[1].empty());
  CHECK(scc.topological_order() == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("components collapse to singletons without arcs") {
  Digraph g = two_cycles_bridge();
  SccResult scc = strongly_connected_components(g, ArcSet{});
  CHECK(scc.components.size() == 5);
  for (NodeId v = 0; v < 5; ++v) CHECK(scc.components[v] == NodeSet{v});
}

TEST_CASE("components match brute-force mutual reachability") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    SplitMix64 rng(seed);
    GenParams params;
    params.nodes = 2 + static_cast<std::uint32_t>(rng.below(6));
    params.arcs = 1 + static_cast<std::uint32_t>(rng.below(12));
    params.seed = rng.next();
    Digraph g = generate_instance(params);
    ArcSet arcs = all_arcs(g);
    SccResult scc = strongly_connected_components(g, arcs);

    std::vector<NodeSet> reach;
    for (NodeId v = 0; v < g.node_count(); ++v) reach.push_back(reachable_from(g, arcs, v));
    for (NodeId a = 0; a < g.node_count(); ++a) {
      for (NodeId b = 0; b < g.node_count(); ++b) {
        const bool together = reach[a].contains(b) && reach[b].contains(a);
        CHECK(together == (scc.component_of[a] == scc.component_of[b]));
      }
    }
  }
}

TEST_CASE("branching cover accepts exactly the right shapes") {
  Digraph g(4, {{0, 1, Cost::from_int(1)},
                {1, 2, Cost::from_int(1)},
                {0, 2, Cost::from_int(1)},
                {2, 0, Cost::from_int(1)},
                {2, 3, Cost::from_int(1)}});
  CHECK(is_branching_cover(g, 0, ArcSet{0, 1, 4}));
  // Node 3 untouched, but every arc still has a touched endpoint.
  CHECK(is_branching_cover(g, 0, ArcSet{0, 1}));
  // In-degree two on node 2.
  CHECK_FALSE(is_branching_cover(g, 0, ArcSet{0, 1, 2}));
  // Arc into the root.
  CHECK_FALSE(is_branching_cover(g, 0, ArcSet{0, 1, 3}));
  // Tail 1 not reachable from the root through the tree.
  CHECK_FALSE(is_branching_cover(g, 0, ArcSet{1}));
  // Valid branching from root 2, but it touches only {2,3} and the arc
  // 0 -> 1 has no touched endpoint.
  CHECK_FALSE(is_branching_cover(g, 2, ArcSet{4}));
}

TEST_CASE("index sets stay sorted and deduplicated") {
  NodeSet s{3, 1, 3, 2};
  CHECK(s.size() == 3);
  CHECK(*s.begin() == 1);
  CHECK(s.contains(2));
  CHECK_FALSE(s.insert(3));
  CHECK(s.insert(0));
  CHECK(s.erase(1));
  CHECK_FALSE(s.erase(1));
  CHECK(s == NodeSet{0, 2, 3});
  CHECK(NodeSet{1, 2} < NodeSet{1, 3});
  CHECK(NodeSet{1, 2} < NodeSet{1, 2, 5});
}
