#include <stdexcept>

#include "doctest.h"
#include "dtc/io.hpp"
#include "dtc/reduction.hpp"
#include "dtc/solver.hpp"
#include "dtc/verify.hpp"

using namespace dtc;

namespace {

SCPInstance three_sets() {
  return parse_scp(
      "elements 2\n"
      "set 1 0\n"
      "set 2 0 1\n"
      "set 3 1\n");
}

bool covers_all(const SCPInstance& scp, const std::vector<std::uint32_t>& chosen) {
  NodeSet covered;
  for (std::uint32_t i : chosen)
    for (NodeId e : scp.subsets[i].members) covered.insert(e);
  return covered.size() == scp.element_count;
}

Cost total_weight(const SCPInstance& scp, const std::vector<std::uint32_t>& chosen) {
  Cost w;
  for (std::uint32_t i : chosen) w += scp.subsets[i].weight;
  return w;
}

}  // namespace

TEST_CASE("the reduction lays out root, subsets, elements and primes") {
  SCPInstance scp = three_sets();
  ReducedInstance red = reduce(scp);

  CHECK(red.graph.node_count() == 8);  // root + 3 subsets + 2 elements + 2 primes
  CHECK(red.map.root == 0);
  CHECK(red.map.subset_node == std::vector<NodeId>{1, 2, 3});
  CHECK(red.map.element_node == std::vector<NodeId>{4, 5});
  CHECK(red.map.prime_node == std::vector<NodeId>{6, 7});
  CHECK(red.map.subset_arc == std::vector<ArcId>{0, 1, 2});

  REQUIRE(red.graph.arc_count() == 9);
  // Subset arcs carry the weights.
  CHECK(red.graph.arc(0).tail == 0);
  CHECK(red.graph.arc(0).head == 1);
  CHECK(red.graph.arc(0).cost == Cost::from_int(1));
  CHECK(red.graph.arc(1).cost == Cost::from_int(2));
  CHECK(red.graph.arc(2).cost == Cost::from_int(3));
  // Membership arcs, grouped by subset, cost nothing.
  CHECK(red.graph.arc(3).tail == 1);
  CHECK(red.graph.arc(3).head == 4);
  CHECK(red.graph.arc(4).tail == 2);
  CHECK(red.graph.arc(4).head == 4);
  CHECK(red.graph.arc(5).tail == 2);
  CHECK(red.graph.arc(5).head == 5);
  CHECK(red.graph.arc(6).tail == 3);
  CHECK(red.graph.arc(6).head == 5);
  for (ArcId id = 3; id < 9; ++id) CHECK(red.graph.arc(id).cost.is_zero());
  // Each element drags its primed twin.
  CHECK(red.graph.arc(7).tail == 4);
  CHECK(red.graph.arc(7).head == 6);
  CHECK(red.graph.arc(8).tail == 5);
  CHECK(red.graph.arc(8).head == 7);

  CHECK_THROWS_AS(reduce(SCPInstance{}), std::invalid_argument);
}

TEST_CASE("exhaustive set cover agrees with the reduced exhaustive tree cover") {
  SCPInstance scp = three_sets();
  ScpResult direct = exact_scp(scp);
  REQUIRE(direct.feasible);
  CHECK(direct.weight == Cost::from_int(2));
  CHECK(direct.chosen == std::vector<std::uint32_t>{1});

  ReducedInstance red = reduce(scp);
  OracleResult reduced_opt = exact_min_cover(red.graph, red.map.root);
  REQUIRE(reduced_opt.feasible);
  CHECK(reduced_opt.cost == direct.weight);

  std::vector<std::uint32_t> lifted = lift_cover(red, reduced_opt.witness);
  CHECK(covers_all(scp, lifted));
  CHECK(total_weight(scp, lifted) <= reduced_opt.cost);
}

TEST_CASE("solving the reduced graph lifts back to a feasible cover") {
  SCPInstance scp = three_sets();
  ReducedInstance red = reduce(scp);
  RootOutcome out = solve_root(red.graph, red.map.root);
  REQUIRE(out.result.has_value());

  std::vector<std::uint32_t> lifted = lift_cover(red, out.result->tree);
  CHECK(covers_all(scp, lifted));
  CHECK(total_weight(scp, lifted) <= out.result->tree_cost);
  CHECK(exact_scp(scp).weight <= total_weight(scp, lifted));
}

TEST_CASE("zero-weight subsets ride along for free") {
  SCPInstance scp = parse_scp(
      "elements 2\n"
      "set 0 0\n"
      "set 5 1\n");
  ScpResult direct = exact_scp(scp);
  REQUIRE(direct.feasible);
  CHECK(direct.weight == Cost::from_int(5));
  CHECK(direct.chosen == std::vector<std::uint32_t>{0, 1});

  ReducedInstance red = reduce(scp);
  OracleResult reduced_opt = exact_min_cover(red.graph, red.map.root);
  CHECK(reduced_opt.cost == direct.weight);
}

TEST_CASE("ties pick the lexicographically smallest cover") {
  SCPInstance scp = parse_scp(
      "elements 1\n"
      "set 1 0\n"
      "set 1 0\n");
  ScpResult r = exact_scp(scp);
  REQUIRE(r.feasible);
  CHECK(r.weight == Cost::from_int(1));
  CHECK(r.chosen == std::vector<std::uint32_t>{0});
}

TEST_CASE("uncoverable elements make the instance infeasible") {
  SCPInstance scp = parse_scp(
      "elements 2\n"
      "set 1 0\n");
  ScpResult r = exact_scp(scp);
  CHECK_FALSE(r.feasible);

  // The reduced graph is infeasible from the root for the same reason.
  ReducedInstance red = reduce(scp);
  CHECK_FALSE(exact_min_cover(red.graph, red.map.root).feasible);
  CHECK_FALSE(solve_root(red.graph, red.map.root).result.has_value());
}

TEST_CASE("the exhaustive set-cover search refuses too many subsets") {
  SCPInstance scp;
  scp.element_count = 1;
  for (int i = 0; i < 21; ++i) {
    SCPInstance::Subset sub;
    sub.weight = Cost::from_int(1);
    sub.members = NodeSet{0};
    scp.subsets.push_back(sub);
  }
  CHECK_THROWS_AS(exact_scp(scp), std::invalid_argument);
  scp.subsets.pop_back();
  CHECK(exact_scp(scp).feasible);
}

TEST_CASE("lift rejects arc ids outside the reduced graph") {
  ReducedInstance red = reduce(three_sets());
  CHECK_THROWS_AS(lift_cover(red, ArcSet{99}), std::invalid_argument);
  CHECK(lift_cover(red, ArcSet{}).empty());
}
