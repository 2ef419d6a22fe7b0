#pragma once

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dtc/digraph.hpp"
#include "dtc/dual.hpp"

namespace dtc {

/// Partition of the nodes the root cannot yet reach through saturated arcs,
/// by their in-degree in the saturated subgraph: none (source), exactly one
/// (sink), two or more (critical). u_set collects reachable + sinks +
/// criticals; it is the vertex cover the rest of the solve commits to.
struct NodeClassification {
  NodeSet reachable;
  NodeSet sources;
  NodeSet sinks;
  NodeSet criticals;
  /// Criticals that already have a saturated in-arc from a non-source.
  NodeSet covered_criticals;
  NodeSet u_set;
};

/// One greedy covering option. kViaSource buys the cheapest way into a
/// source plus that source's arcs to a batch of uncovered criticals;
/// kDirect buys a single non-source arc into one critical.
struct GreedyCandidate {
  enum class Kind { kViaSource, kDirect };

  Kind kind = Kind::kDirect;
  /// The source node (kViaSource) or the critical node itself (kDirect).
  NodeId anchor = 0;
  /// Criticals this candidate covers, in pick order.
  std::vector<NodeId> chosen;
  Cost cost;
  std::uint32_t count = 0;
  /// cost / count, exact.
  Cost efficiency;
  ArcSet covering_arcs;
};

struct TraceEvent {
  int phase = 0;
  std::string text;
};

struct SolveResult {
  NodeId root = 0;
  ArcSet tree;
  Cost tree_cost;
  DualLedger ledger;
  /// ledger objective; a lower bound on the optimum by weak duality.
  Cost dual_lower_bound;
  Cost h_g;
  /// max(2, h_g): the proven bound on tree_cost / optimum.
  Cost ratio_bound;
  std::vector<TraceEvent> trace;
};

/// Primal-dual state for one root. The intended call order is the one
/// solve_root uses; the individual steps are public so tests can drive and
/// inspect each one.
class SolverState {
 public:
  SolverState(const Digraph& g, NodeId root);

  /// Phase 1: pop pending vertex sets FIFO; for each one whose incoming cut
  /// has no saturated arc yet, raise a cut dual until the cheapest incoming
  /// arc saturates. Newly saturated arcs join the active set and any new
  /// non-trivial strongly connected component gets enqueued once.
  void cover_pending_cuts();

  /// Build the working tree over the nodes the root reaches through active
  /// arcs: one minimum-arc-index entering arc per condensation component,
  /// then a minimum-arc-index arborescence inside each component.
  void build_reachable_tree();

  /// Classification against the current active arc set.
  NodeClassification classify() const;

  /// Freeze the classification (and thus u_set) for the later phases.
  void commit_classification();

  /// Greedy option that covers uncovered criticals through source `s`;
  /// absent when s has no way in or no uncovered critical neighbor.
  std::optional<GreedyCandidate> source_candidate(NodeId s) const;

  /// Cheapest-per-covered candidate over all sources and all direct
  /// single-critical options. Ties: direct before via-source, then smaller
  /// anchor node. Absent when every option is infinite.
  std::optional<GreedyCandidate> best_candidate() const;

  /// Buy the candidate's arcs, mark its criticals covered, and record the
  /// harmonic-priced dual payments for each covered critical.
  void apply_candidate(const GreedyCandidate& cand);

  /// Phase 2: freeze the batch-size parameter g, then apply best candidates
  /// until no critical is left uncovered.
  void greedy_cover_criticals();

  /// Recompute every reduced cost from the ledger, check none went negative,
  /// and activate every arc the greedy payments saturated.
  void reconcile_reduced_costs();

  /// Phase 3 target: the earliest (in condensation topological order)
  /// component of the unreachable region that holds a committed-cover node,
  /// together with all its ancestor components. Its incoming active cut is
  /// empty by construction.
  NodeSet find_uncovered_closure() const;

  /// Phase 3 step: raise a cut dual on the closure's incoming cut, activate
  /// the saturated arcs, route the tree into the closure, and hang sink
  /// chains off it.
  void cover_closure(const NodeSet& closure);

  /// Phase 3: cover closures until every committed-cover node is reachable
  /// through active arcs, then extend the tree over active arcs to span
  /// every committed-cover node it misses.
  void connect_remaining();

  /// Repair the tree into a branching if needed, require that it covers the
  /// graph, prune removable leaf arcs (most expensive first), and package
  /// the result.
  SolveResult extract_result();

  bool tree_is_valid_cover() const;

  const Digraph& graph() const { return *g_; }
  NodeId root() const { return root_; }
  const ArcSet& active_arcs() const { return active_; }
  const ArcSet& tree_arcs() const { return tree_; }
  const Cost& reduced(ArcId id) const { return reduced_[id]; }
  const DualLedger& ledger() const { return ledger_; }
  const std::deque<NodeSet>& pending() const { return pending_; }
  const NodeClassification& committed() const;
  unsigned long g_param() const { return g_param_; }
  const std::vector<TraceEvent>& trace() const { return trace_; }

 private:
  void enqueue_new_components();
  void saturate_cut(const NodeSet& set, const ArcSet& cut);
  ArcSet arborescence_arcs(const std::vector<char>& scope, NodeId from) const;
  void freeze_batch_parameter();
  void note(int phase, std::string text);

  const Digraph* g_;
  NodeId root_;
  std::vector<Cost> reduced_;
  ArcSet active_;
  ArcSet tree_;
  std::deque<NodeSet> pending_;
  std::set<NodeSet> seen_;
  DualLedger ledger_;
  std::optional<NodeClassification> committed_;
  std::vector<char> covered_;
  unsigned long g_param_ = 1;
  Cost h_g_ = Cost::from_int(1);
  bool h_frozen_ = false;
  std::vector<TraceEvent> trace_;
};

/// Raised internally when a root cannot carry any branching cover.
class InfeasibleRootError : public std::runtime_error {
 public:
  explicit InfeasibleRootError(const std::string& why) : std::runtime_error(why) {}
};

struct RootOutcome {
  std::optional<SolveResult> result;
  /// Set when result is absent.
  std::string infeasible_reason;
};

/// Full pipeline for one root, with early exit as soon as the working tree
/// is already a valid branching cover.
RootOutcome solve_root(const Digraph& g, NodeId root);

/// Best result over all roots (smallest cost, then smallest root index);
/// absent when every root is infeasible. Roots may be solved in parallel,
/// bounded by thread_budget(); the outcome does not depend on the schedule.
std::optional<SolveResult> solve(const Digraph& g);

}  // namespace dtc
