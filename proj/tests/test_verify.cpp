#include <stdexcept>

#include "doctest.h"
#include "dtc/io.hpp"
#include "dtc/solver.hpp"
#include "dtc/verify.hpp"
#include "fixtures.hpp"

using namespace dtc;

TEST_CASE("tree verification accepts a good tree and recomputes its cost") {
  Digraph g = fixtures::graph(fixtures::kChain);
  VerificationReport rep = verify_tree_cover(g, 0, ArcSet{0});
  CHECK(rep.is_branching);
  CHECK(rep.is_cover);
  CHECK(rep.cost_recomputed == Cost::from_int(2));
  CHECK(rep.violations.empty());
}

TEST_CASE("tree verification rejects structural defects") {
  Digraph g = fixtures::graph(fixtures::kDiamond);

  VerificationReport unreachable = verify_tree_cover(g, 0, ArcSet{2});
  CHECK_FALSE(unreachable.is_branching);
  CHECK_FALSE(unreachable.ok());

  VerificationReport two_in = verify_tree_cover(g, 0, ArcSet{0, 1, 2, 3});
  CHECK_FALSE(two_in.is_branching);

  VerificationReport not_cover = verify_tree_cover(g, 0, ArcSet{});
  CHECK(not_cover.is_branching);
  CHECK_FALSE(not_cover.is_cover);

  VerificationReport bad_arc = verify_tree_cover(g, 0, ArcSet{99});
  CHECK_FALSE(bad_arc.ok());

  VerificationReport bad_root = verify_tree_cover(g, 42, ArcSet{});
  CHECK_FALSE(bad_root.ok());

  Digraph chain = fixtures::graph(fixtures::kChain);
  VerificationReport into_root = verify_tree_cover(chain, 1, ArcSet{0});
  CHECK_FALSE(into_root.is_branching);
}

TEST_CASE("dual feasibility checks every entry and every arc load") {
  Digraph g = fixtures::graph(fixtures::kChain);

  DualCheck good = check_dual_feasibility(
      g, 0, {{NodeSet{1, 2}, Cost::from_int(2), DualFamily::kCut}});
  CHECK(good.feasible);
  CHECK(good.objective == Cost::from_int(2));

  DualCheck overload = check_dual_feasibility(
      g, 0, {{NodeSet{1, 2}, Cost::from_int(3), DualFamily::kCut}});
  CHECK_FALSE(overload.feasible);

  DualCheck with_root = check_dual_feasibility(
      g, 0, {{NodeSet{0, 1}, Cost::from_int(1), DualFamily::kCut}});
  CHECK_FALSE(with_root.feasible);

  DualCheck empty_set = check_dual_feasibility(g, 0, {{NodeSet{}, Cost::from_int(1), DualFamily::kCut}});
  CHECK_FALSE(empty_set.feasible);

  // {2} holds no arc with both endpoints inside, so it is outside the
  // priced family even though raising it would overload nothing.
  DualCheck no_induced = check_dual_feasibility(
      g, 0, {{NodeSet{2}, Cost::fraction(1, 2), DualFamily::kCut}});
  CHECK_FALSE(no_induced.feasible);

  DualCheck zero_value = check_dual_feasibility(
      g, 0, {{NodeSet{1, 2}, Cost(), DualFamily::kCut}});
  CHECK_FALSE(zero_value.feasible);

  DualCheck infinite_value = check_dual_feasibility(
      g, 0, {{NodeSet{1, 2}, Cost::infinite(), DualFamily::kCut}});
  CHECK_FALSE(infinite_value.feasible);

  // Loads accumulate across entries and families: two entries of 1 load the
  // cost-2 entry arc to exactly its cost, and any third value spills over.
  DualCheck stacked = check_dual_feasibility(
      g, 0,
      {{NodeSet{1, 2}, Cost::from_int(1), DualFamily::kCut},
       {NodeSet{1, 2}, Cost::from_int(1), DualFamily::kGreedy}});
  CHECK(stacked.feasible);
  DualCheck spilled = check_dual_feasibility(
      g, 0,
      {{NodeSet{1, 2}, Cost::from_int(1), DualFamily::kCut},
       {NodeSet{1, 2}, Cost::from_int(1), DualFamily::kGreedy},
       {NodeSet{1, 2}, Cost::fraction(1, 7), DualFamily::kCut}});
  CHECK_FALSE(spilled.feasible);
}

TEST_CASE("certificates resolve endpoint pairs cheapest-first") {
  Digraph g(2, {{0, 1, Cost::from_int(5)}, {0, 1, Cost::from_int(1)}});

  Certificate cert;
  cert.root = 0;
  cert.tree_arcs = {{0, 1}};
  VerificationReport rep = verify_certificate(g, cert);
  CHECK(rep.ok());
  CHECK(rep.cost_recomputed == Cost::from_int(1));

  cert.tree_arcs = {{0, 1}, {0, 1}};
  VerificationReport both = verify_certificate(g, cert);
  CHECK_FALSE(both.ok());  // both parallel arcs resolved: in-degree two

  cert.tree_arcs = {{0, 1}, {0, 1}, {0, 1}};
  VerificationReport over = verify_certificate(g, cert);
  CHECK_FALSE(over.ok());  // more mentions than parallel arcs exist

  cert.tree_arcs = {{1, 0}};
  VerificationReport missing = verify_certificate(g, cert);
  CHECK_FALSE(missing.ok());  // no such arc at all
}

TEST_CASE("certificates from the solver verify end to end") {
  Digraph g = fixtures::graph(fixtures::kDiamond);
  RootOutcome out = solve_root(g, 0);
  REQUIRE(out.result.has_value());

  Certificate cert;
  cert.root = out.result->root;
  for (ArcId id : out.result->tree)
    cert.tree_arcs.emplace_back(g.arc(id).tail, g.arc(id).head);
  cert.duals = out.result->ledger.entries;

  Certificate reparsed = parse_certificate(emit_certificate(cert));
  VerificationReport rep = verify_certificate(g, reparsed);
  CHECK(rep.ok());
  CHECK(rep.cost_recomputed == out.result->tree_cost);
  CHECK(rep.dual_objective == out.result->dual_lower_bound);
  REQUIRE(rep.ratio_vs_dual.has_value());
  CHECK(*rep.ratio_vs_dual == Cost::from_int(1));
}

TEST_CASE("exhaustive search matches the fixtures and refuses big graphs") {
  CHECK(exact_min_cover(fixtures::graph(fixtures::kChain), 0).cost == Cost::from_int(2));
  CHECK(exact_min_cover(fixtures::graph(fixtures::kDiamond), 0).cost == Cost::from_int(1));
  CHECK(exact_min_cover(fixtures::graph(fixtures::kCycleEntry), 0).cost == Cost::from_int(5));

  std::vector<Arc> nineteen(19, {0, 1, Cost::from_int(1)});
  Digraph wide(2, nineteen);
  CHECK_THROWS_AS(exact_min_cover(wide, 0), std::invalid_argument);
  // Every arc touches the root, so the empty tree covers for free; the point
  // is that the raised cap makes the 2^19 sweep run at all.
  OracleResult wide_opt = exact_min_cover(wide, 0, 19);
  REQUIRE(wide_opt.feasible);
  CHECK(wide_opt.cost.is_zero());
  CHECK(wide_opt.witness.empty());

  std::vector<Arc> too_many(27, {0, 1, Cost::from_int(1)});
  Digraph very_wide(2, too_many);
  CHECK_THROWS_AS(exact_min_cover(very_wide, 0, 40), std::invalid_argument);

  CHECK_THROWS_AS(exact_min_cover(wide, 7), std::invalid_argument);
}

TEST_CASE("exhaustive search is exact on fractional costs") {
  Digraph g(3, {{0, 1, Cost::fraction(1, 3)}, {1, 2, Cost::fraction(2, 5)}});
  OracleResult r = exact_min_cover(g, 0);
  REQUIRE(r.feasible);
  CHECK(r.cost == Cost::fraction(1, 3));
  CHECK(r.witness == ArcSet{0});

  // Denominators whose common multiple overflows the fast integer path.
  Digraph deep(3, {{0, 1, Cost::fraction(1, 1099511627776UL)},   // 2^40
                   {1, 2, Cost::fraction(1, 847288609443UL)}});  // 3^25
  OracleResult d = exact_min_cover(deep, 0);
  REQUIRE(d.feasible);
  CHECK(d.cost == Cost::fraction(1, 1099511627776UL));
  CHECK(d.witness == ArcSet{0});
}

TEST_CASE("exhaustive search handles graphs with many nodes") {
  std::vector<Arc> arcs = {{0, 65, Cost::from_int(1)}, {65, 66, Cost()}};
  Digraph g(70, arcs);
  OracleResult r = exact_min_cover(g, 0);
  REQUIRE(r.feasible);
  CHECK(r.cost == Cost::from_int(1));
  CHECK(r.witness == ArcSet{0});
  OracleResult from_end = exact_min_cover(g, 66);
  CHECK_FALSE(from_end.feasible);
}

TEST_CASE("the cross-check rejects tampered results") {
  Digraph g = fixtures::graph(fixtures::kDiamond);
  OracleResult oracle = exact_min_cover(g, 0);
  RootOutcome out = solve_root(g, 0);
  REQUIRE(out.result.has_value());
  CHECK(ratio_check(g, *out.result, oracle.cost).ok());
  CHECK(ratio_check(g, *out.result, std::nullopt).ok());

  SolveResult cost_lie = *out.result;
  cost_lie.tree_cost += Cost::from_int(1);
  CHECK_FALSE(ratio_check(g, cost_lie, std::nullopt).ok());

  SolveResult dual_lie = *out.result;
  dual_lie.dual_lower_bound += Cost::from_int(1);
  CHECK_FALSE(ratio_check(g, dual_lie, std::nullopt).ok());

  SolveResult bound_lie = *out.result;
  bound_lie.ratio_bound = Cost::from_int(3);
  CHECK_FALSE(ratio_check(g, bound_lie, std::nullopt).ok());

  // An undersized batch parameter shrinks the certified budget below the
  // tree cost, which the check must notice.
  SolveResult h_lie = *out.result;
  h_lie.h_g = Cost::fraction(1, 2);
  CHECK_FALSE(ratio_check(g, h_lie, std::nullopt).ok());

  CHECK_FALSE(ratio_check(g, *out.result, Cost()).ok());           // below the dual
  CHECK_FALSE(ratio_check(g, *out.result, Cost::from_int(2)).ok());  // above the cost
}
