#include "dtc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <sstream>
#include <thread>

#include "dtc/generate.hpp"

namespace dtc {

namespace {

std::string set_str(const NodeSet& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (NodeId v : s) {
    if (!first) out << ",";
    out << v;
    first = false;
  }
  out << "}";
  return out.str();
}

}  // namespace

SolverState::SolverState(const Digraph& g, NodeId root) : g_(&g), root_(root) {
  if (root >= g.node_count()) throw std::invalid_argument("root out of range");
  reduced_.reserve(g.arc_count());
  for (const Arc& a : g.arcs()) reduced_.push_back(a.cost);
  for (ArcId id = 0; id < g.arc_count(); ++id)
    if (reduced_[id].is_zero()) active_.insert(id);

  // Pending cuts start with the endpoint pair of every arc avoiding the
  // root, in arc order, each distinct set once.
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    const Arc& a = g.arc(id);
    if (a.tail == root || a.head == root) continue;
    NodeSet pair{a.tail, a.head};
    if (seen_.insert(pair).second) pending_.push_back(std::move(pair));
  }
  enqueue_new_components();
}

void SolverState::note(int phase, std::string text) {
  trace_.push_back({phase, std::move(text)});
}

void SolverState::enqueue_new_components() {
  SccResult scc = strongly_connected_components(*g_, active_);
  for (const NodeSet& comp : scc.components) {
    if (comp.size() < 2 || comp.contains(root_)) continue;
    if (seen_.insert(comp).second) pending_.push_back(comp);
  }
}

void SolverState::saturate_cut(const NodeSet& set, const ArcSet& cut) {
  Cost alpha = Cost::infinite();
  for (ArcId id : cut) alpha = min(alpha, reduced_[id]);
  if (alpha.is_infinite()) throw std::logic_error("saturating an empty cut");
  std::uint32_t newly = 0;
  for (ArcId id : cut) {
    reduced_[id] -= alpha;
    if (reduced_[id].is_zero() && active_.insert(id)) ++newly;
  }
  if (alpha.is_positive()) ledger_.add(set, alpha, DualFamily::kCut);
  note(committed_ ? 3 : 1,
       "cut " + set_str(set) + " alpha " + alpha.str() + " saturated " + std::to_string(newly));
}

void SolverState::cover_pending_cuts() {
  while (!pending_.empty()) {
    NodeSet set = std::move(pending_.front());
    pending_.pop_front();
    ArcSet cut = in_cut(*g_, set);
    bool covered = false;
    for (ArcId id : cut) {
      if (active_.contains(id)) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    if (cut.empty())
      throw InfeasibleRootError("set " + set_str(set) + " has no incoming arc");
    saturate_cut(set, cut);
    enqueue_new_components();
  }
}

ArcSet SolverState::arborescence_arcs(const std::vector<char>& scope, NodeId from) const {
  // Arcs usable here: active, both endpoints inside the scope.
  std::vector<std::uint32_t> usable;
  for (ArcId id : active_) {
    const Arc& a = g_->arc(id);
    if (scope[a.tail] && scope[a.head]) usable.push_back(id);
  }
  SccResult scc = strongly_connected_components(*g_, ArcSet(usable));

  const std::uint32_t comp_n = static_cast<std::uint32_t>(scc.components.size());
  std::vector<char> comp_visited(comp_n, 0);
  std::vector<NodeId> entry_node(comp_n, 0);
  comp_visited[scc.component_of[from]] = 1;
  entry_node[scc.component_of[from]] = from;

  std::vector<std::uint32_t> chosen;
  // One minimum-arc-index entering arc per newly reached component.
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::uint32_t id : usable) {
      const Arc& a = g_->arc(id);
      std::uint32_t ct = scc.component_of[a.tail];
      std::uint32_t ch = scc.component_of[a.head];
      if (ct == ch || !comp_visited[ct] || comp_visited[ch]) continue;
      comp_visited[ch] = 1;
      entry_node[ch] = a.head;
      chosen.push_back(id);
      progress = true;
    }
  }
  // Minimum-arc-index arborescence from the entry node inside each component.
  std::vector<char> in_tree(g_->node_count(), 0);
  for (std::uint32_t c = 0; c < comp_n; ++c)
    if (comp_visited[c]) in_tree[entry_node[c]] = 1;
  progress = true;
  while (progress) {
    progress = false;
    for (std::uint32_t id : usable) {
      const Arc& a = g_->arc(id);
      std::uint32_t ct = scc.component_of[a.tail];
      if (ct != scc.component_of[a.head] || !comp_visited[ct]) continue;
      if (!in_tree[a.tail] || in_tree[a.head]) continue;
      in_tree[a.head] = 1;
      chosen.push_back(id);
      progress = true;
    }
  }
  return ArcSet(std::move(chosen));
}

void SolverState::build_reachable_tree() {
  std::vector<char> scope(g_->node_count(), 1);
  tree_ = arborescence_arcs(scope, root_);
}

NodeClassification SolverState::classify() const {
  NodeClassification cls;
  cls.reachable = reachable_from(*g_, active_, root_);
  std::vector<std::uint32_t> sources, sinks, criticals;
  for (NodeId v = 0; v < g_->node_count(); ++v) {
    if (cls.reachable.contains(v)) continue;
    std::uint32_t indeg = 0;
    for (ArcId id : g_->in_arcs(v))
      if (active_.contains(id)) ++indeg;
    if (indeg == 0)
      sources.push_back(v);
    else if (indeg == 1)
      sinks.push_back(v);
    else
      criticals.push_back(v);
  }
  cls.sources = NodeSet(std::move(sources));
  cls.sinks = NodeSet(sinks);
  cls.criticals = NodeSet(criticals);
  for (NodeId v : cls.criticals) {
    for (ArcId id : g_->in_arcs(v)) {
      if (!active_.contains(id)) continue;
      if (!cls.sources.contains(g_->arc(id).tail)) {
        cls.covered_criticals.insert(v);
        break;
      }
    }
  }
  for (NodeId v : cls.reachable) cls.u_set.insert(v);
  for (NodeId v : cls.sinks) cls.u_set.insert(v);
  for (NodeId v : cls.criticals) cls.u_set.insert(v);
  return cls;
}

void SolverState::commit_classification() {
  committed_ = classify();
  covered_.assign(g_->node_count(), 0);
  for (NodeId v : committed_->covered_criticals) covered_[v] = 1;
}

const NodeClassification& SolverState::committed() const {
  if (!committed_) throw std::logic_error("classification not committed yet");
  return *committed_;
}

std::optional<GreedyCandidate> SolverState::source_candidate(NodeId s) const {
  const NodeClassification& cls = committed();
  if (!cls.sources.contains(s)) throw std::invalid_argument("not a source node");

  Cost way_in = Cost::infinite();
  ArcId way_in_arc = 0;
  for (ArcId id : g_->in_arcs(s)) {
    if (reduced_[id] < way_in) {
      way_in = reduced_[id];
      way_in_arc = id;
    }
  }
  if (way_in.is_infinite()) return std::nullopt;

  // Cheapest arc from s to each adjacent critical, in (cost, node) order.
  struct Adj {
    Cost cost;
    NodeId critical;
    ArcId arc;
  };
  std::vector<Adj> adj;
  for (ArcId id : g_->out_arcs(s)) {
    NodeId v = g_->arc(id).head;
    if (!cls.criticals.contains(v)) continue;
    auto it = std::find_if(adj.begin(), adj.end(), [&](const Adj& a) { return a.critical == v; });
    if (it == adj.end())
      adj.push_back({reduced_[id], v, id});
    else if (reduced_[id] < it->cost) {
      it->cost = reduced_[id];
      it->arc = id;
    }
  }
  std::sort(adj.begin(), adj.end(), [](const Adj& a, const Adj& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.critical < b.critical;
  });

  GreedyCandidate cand;
  cand.kind = GreedyCandidate::Kind::kViaSource;
  cand.anchor = s;
  cand.cost = way_in;
  cand.covering_arcs.insert(way_in_arc);
  for (const Adj& a : adj) {
    if (covered_[a.critical]) continue;
    if (cand.chosen.empty()) {
      cand.chosen.push_back(a.critical);
      cand.cost += a.cost;
      cand.covering_arcs.insert(a.arc);
      continue;
    }
    // Extend only while the per-covered price strictly improves.
    Cost extended = cand.cost + a.cost;
    std::uint32_t d = static_cast<std::uint32_t>(cand.chosen.size());
    if (extended.div_by(d + 1) < cand.cost.div_by(d)) {
      cand.chosen.push_back(a.critical);
      cand.cost = extended;
      cand.covering_arcs.insert(a.arc);
    }
  }
  if (cand.chosen.empty()) return std::nullopt;
  cand.count = static_cast<std::uint32_t>(cand.chosen.size());
  cand.efficiency = cand.cost.div_by(cand.count);
  return cand;
}

std::optional<GreedyCandidate> SolverState::best_candidate() const {
  const NodeClassification& cls = committed();
  std::optional<GreedyCandidate> best;
  auto better = [](const GreedyCandidate& a, const GreedyCandidate& b) {
    if (a.efficiency != b.efficiency) return a.efficiency < b.efficiency;
    if (a.kind != b.kind) return a.kind == GreedyCandidate::Kind::kDirect;
    return a.anchor < b.anchor;
  };
  for (NodeId v : cls.criticals) {
    if (covered_[v]) continue;
    // Cheapest non-source in-arc; among equally cheap ones prefer a tail the
    // root already reaches (it keeps the tree connected and avoids needless
    // Phase III work), then the smallest arc id.
    Cost cheapest = Cost::infinite();
    ArcId arc = 0;
    bool arc_reachable = false;
    for (ArcId id : g_->in_arcs(v)) {
      if (cls.sources.contains(g_->arc(id).tail)) continue;
      const bool tail_reachable = cls.reachable.contains(g_->arc(id).tail);
      if (reduced_[id] < cheapest ||
          (reduced_[id] == cheapest && tail_reachable && !arc_reachable)) {
        cheapest = reduced_[id];
        arc = id;
        arc_reachable = tail_reachable;
      }
    }
    if (cheapest.is_infinite()) continue;
    GreedyCandidate cand;
    cand.kind = GreedyCandidate::Kind::kDirect;
    cand.anchor = v;
    cand.chosen = {v};
    cand.cost = cheapest;
    cand.count = 1;
    cand.efficiency = cheapest;
    cand.covering_arcs.insert(arc);
    if (!best || better(cand, *best)) best = std::move(cand);
  }
  for (NodeId s : cls.sources) {
    auto cand = source_candidate(s);
    if (cand && (!best || better(*cand, *best))) best = std::move(cand);
  }
  return best;
}

void SolverState::apply_candidate(const GreedyCandidate& cand) {
  const NodeClassification& cls = committed();
  if (!h_frozen_) freeze_batch_parameter();
  Cost price = (cand.cost / h_g_).div_by(cand.count);

  for (NodeId v : cand.chosen) {
    if (covered_[v]) throw std::logic_error("candidate covers an already covered critical");
    // Sources with an arc into v, cheapest arc first.
    struct Conn {
      Cost cost;
      NodeId source;
    };
    std::vector<Conn> conns;
    for (ArcId id : g_->in_arcs(v)) {
      NodeId s = g_->arc(id).tail;
      if (!cls.sources.contains(s)) continue;
      auto it =
          std::find_if(conns.begin(), conns.end(), [&](const Conn& c) { return c.source == s; });
      if (it == conns.end())
        conns.push_back({reduced_[id], s});
      else if (reduced_[id] < it->cost)
        it->cost = reduced_[id];
    }
    std::sort(conns.begin(), conns.end(), [](const Conn& a, const Conn& b) {
      if (a.cost != b.cost) return a.cost < b.cost;
      return a.source < b.source;
    });
    if (conns.empty() || !conns.front().cost.is_zero())
      throw std::logic_error("uncovered critical without a free source arc");

    // Two ways to total the payments: summing raw cost gaps stops one set
    // short when a connection cost jumps past the price, while the capped
    // sums below always pay out the full price. Both totals go to the trace
    // so the difference stays visible.
    Cost literal;
    {
      std::size_t j = 0;
      while (j + 1 < conns.size() && conns[j + 1].cost < price) {
        literal += conns[j + 1].cost - conns[j].cost;
        ++j;
      }
      if (j + 1 == conns.size() && conns[j].cost < price) literal += price - conns[j].cost;
    }

    NodeSet grown{v};
    Cost paid;
    for (std::size_t j = 0; j < conns.size(); ++j) {
      grown.insert(conns[j].source);
      Cost next = j + 1 < conns.size() ? conns[j + 1].cost : Cost::infinite();
      Cost y = min(price, next) - min(price, conns[j].cost);
      if (y.is_positive()) {
        ledger_.add(grown, y, DualFamily::kGreedy);
        paid += y;
      }
    }
    if (paid != price) throw std::logic_error("greedy dual payments do not sum to the price");
    covered_[v] = 1;
    committed_->covered_criticals.insert(v);
    note(2, "critical " + std::to_string(v) + " paid " + price.str() + " literal " +
                literal.str() + " capped " + paid.str());
  }

  for (ArcId id : cand.covering_arcs) {
    active_.insert(id);
    tree_.insert(id);
  }
  ledger_.c2_total += cand.cost;
  note(2, std::string("candidate ") +
              (cand.kind == GreedyCandidate::Kind::kDirect ? "direct" : "via-source") + " anchor " +
              std::to_string(cand.anchor) + " cost " + cand.cost.str() + " covers " +
              std::to_string(cand.count));
}

void SolverState::freeze_batch_parameter() {
  const NodeClassification& cls = committed();
  g_param_ = 1;
  for (NodeId s : cls.sources) {
    NodeSet adjacent;
    for (ArcId id : g_->out_arcs(s)) {
      NodeId v = g_->arc(id).head;
      if (cls.criticals.contains(v)) adjacent.insert(v);
    }
    if (adjacent.size() > g_param_) g_param_ = adjacent.size();
  }
  h_g_ = harmonic(g_param_);
  h_frozen_ = true;
  note(2, "g " + std::to_string(g_param_) + " h " + h_g_.str());
}

void SolverState::greedy_cover_criticals() {
  if (!h_frozen_) freeze_batch_parameter();
  while (true) {
    const NodeClassification& cls = committed();
    bool any_uncovered = false;
    for (NodeId v : cls.criticals)
      if (!covered_[v]) {
        any_uncovered = true;
        break;
      }
    if (!any_uncovered) break;
    auto cand = best_candidate();
    if (!cand) throw InfeasibleRootError("an uncovered critical node cannot be covered");
    apply_candidate(*cand);
  }
}

void SolverState::reconcile_reduced_costs() {
  std::vector<Cost> load(g_->arc_count());
  for (const DualEntry& entry : ledger_.entries) {
    std::vector<char> in_set(g_->node_count(), 0);
    for (NodeId v : entry.set) in_set[v] = 1;
    for (ArcId id = 0; id < g_->arc_count(); ++id) {
      const Arc& a = g_->arc(id);
      if (in_set[a.head] && !in_set[a.tail]) load[id] += entry.value;
    }
  }
  for (ArcId id = 0; id < g_->arc_count(); ++id) {
    // The checked subtraction throws if any arc was charged past its cost.
    reduced_[id] = g_->arc(id).cost - load[id];
    if (reduced_[id].is_zero()) active_.insert(id);
  }
}

NodeSet SolverState::find_uncovered_closure() const {
  const NodeClassification& cls = committed();
  NodeSet reach = reachable_from(*g_, active_, root_);
  std::vector<char> in_x(g_->node_count(), 0);
  for (NodeId v = 0; v < g_->node_count(); ++v)
    if (!reach.contains(v)) in_x[v] = 1;

  std::vector<std::uint32_t> usable;
  for (ArcId id : active_) {
    const Arc& a = g_->arc(id);
    if (in_x[a.tail] && in_x[a.head]) usable.push_back(id);
  }
  SccResult scc = strongly_connected_components(*g_, ArcSet(usable));

  std::vector<char> holds_cover_node(scc.components.size(), 0);
  for (NodeId v = 0; v < g_->node_count(); ++v)
    if (in_x[v] && cls.u_set.contains(v)) holds_cover_node[scc.component_of[v]] = 1;

  std::uint32_t target = UINT32_MAX;
  for (std::uint32_t c : scc.topological_order()) {
    if (holds_cover_node[c]) {
      target = c;
      break;
    }
  }
  if (target == UINT32_MAX)
    throw std::logic_error("no unreachable component holds a committed cover node");

  // The target plus everything that can reach it; the incoming active cut of
  // that union is empty, which is what makes its dual payment safe.
  std::vector<std::vector<std::uint32_t>> preds(scc.components.size());
  for (std::uint32_t c = 0; c < scc.components.size(); ++c)
    for (std::uint32_t d : scc.successors[c]) preds[d].push_back(c);
  std::vector<char> in_closure(scc.components.size(), 0);
  in_closure[target] = 1;
  std::vector<std::uint32_t> queue{target};
  while (!queue.empty()) {
    std::uint32_t c = queue.back();
    queue.pop_back();
    for (std::uint32_t p : preds[c]) {
      if (!in_closure[p]) {
        in_closure[p] = 1;
        queue.push_back(p);
      }
    }
  }
  NodeSet closure;
  for (std::uint32_t c = 0; c < scc.components.size(); ++c)
    if (in_closure[c])
      for (NodeId v : scc.components[c]) closure.insert(v);
  for (ArcId id : in_cut(*g_, closure))
    if (active_.contains(id)) throw std::logic_error("uncovered closure has an active in-arc");
  return closure;
}

void SolverState::cover_closure(const NodeSet& closure) {
  const NodeClassification& cls = committed();
  ArcSet cut = in_cut(*g_, closure);
  if (cut.empty())
    throw InfeasibleRootError("region " + set_str(closure) + " has no incoming arc");
  for (ArcId id : cut)
    if (active_.contains(id)) throw std::logic_error("closure already has an active in-arc");

  saturate_cut(closure, cut);

  // Entry arc: a just-saturated cut arc, preferably one whose tail the root
  // already reaches through active arcs.
  NodeSet reach = reachable_from(*g_, active_, root_);
  ArcId entry = UINT32_MAX;
  for (ArcId id : cut) {
    if (!reduced_[id].is_zero()) continue;
    if (entry == UINT32_MAX) entry = id;
    if (reach.contains(g_->arc(id).tail)) {
      entry = id;
      break;
    }
  }
  if (entry == UINT32_MAX) throw std::logic_error("saturated cut without a saturated arc");
  NodeId v = g_->arc(entry).head;

  std::vector<std::uint32_t> drop;
  for (ArcId id : tree_)
    if (g_->arc(id).head == v) drop.push_back(id);
  for (ArcId id : drop) tree_.erase(id);
  tree_.insert(entry);

  std::vector<char> scope(g_->node_count(), 0);
  for (NodeId w : closure) scope[w] = 1;
  for (ArcId id : arborescence_arcs(scope, v)) {
    NodeId head = g_->arc(id).head;
    std::vector<std::uint32_t> replaced;
    for (ArcId t : tree_)
      if (g_->arc(t).head == head && t != id) replaced.push_back(t);
    for (ArcId t : replaced) tree_.erase(t);
    tree_.insert(id);
  }

  // Sink chains hanging off the closure: follow active arcs into sinks
  // outside it, skipping any sink that already has a tree in-arc.
  std::vector<char> visited(g_->node_count(), 0);
  std::vector<char> has_tree_in(g_->node_count(), 0);
  for (ArcId id : tree_) has_tree_in[g_->arc(id).head] = 1;
  std::deque<NodeId> chain;
  for (NodeId w : closure) {
    chain.push_back(w);
    visited[w] = 1;
  }
  while (!chain.empty()) {
    NodeId x = chain.front();
    chain.pop_front();
    for (ArcId id : g_->out_arcs(x)) {
      if (!active_.contains(id)) continue;
      NodeId w = g_->arc(id).head;
      if (closure.contains(w) || !cls.sinks.contains(w) || visited[w]) continue;
      if (has_tree_in[w]) {
        if (!tree_.contains(id)) {
          note(3, "sink chain into " + std::to_string(w) + " skipped, head already parented");
          continue;
        }
      } else {
        tree_.insert(id);
        has_tree_in[w] = 1;
      }
      visited[w] = 1;
      chain.push_back(w);
    }
  }
  note(3, "covered region " + set_str(closure) + " entry arc " + std::to_string(entry));
}

void SolverState::connect_remaining() {
  const NodeClassification& cls = committed();
  std::uint32_t guard = 2 * (g_->node_count() + g_->arc_count()) + 4;
  while (true) {
    NodeSet reach = reachable_from(*g_, active_, root_);
    bool all_reached = true;
    for (NodeId v : cls.u_set) {
      if (!reach.contains(v)) {
        all_reached = false;
        break;
      }
    }
    if (all_reached) break;
    if (guard-- == 0) throw std::logic_error("connectivity phase failed to converge");
    cover_closure(find_uncovered_closure());
  }

  // The tree must span every committed cover node it can now reach through
  // active arcs; walk active arcs outward from the current tree and splice
  // in the discovery path of each missing one.
  while (true) {
    NodeSet tree_reach = reachable_from(*g_, tree_, root_);
    NodeId missing = UINT32_MAX;
    for (NodeId v : cls.u_set) {
      if (!tree_reach.contains(v)) {
        missing = v;
        break;
      }
    }
    if (missing == UINT32_MAX) break;

    std::vector<ArcId> parent(g_->node_count(), UINT32_MAX);
    std::vector<char> seen(g_->node_count(), 0);
    std::deque<NodeId> queue;
    for (NodeId v : tree_reach) {
      seen[v] = 1;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      NodeId x = queue.front();
      queue.pop_front();
      for (ArcId id : g_->out_arcs(x)) {
        if (!active_.contains(id)) continue;
        NodeId w = g_->arc(id).head;
        if (seen[w]) continue;
        seen[w] = 1;
        parent[w] = id;
        queue.push_back(w);
      }
    }
    if (!seen[missing])
      throw std::logic_error("cover node unreachable despite converged connectivity phase");
    std::vector<ArcId> path;
    for (NodeId at = missing; parent[at] != UINT32_MAX; at = g_->arc(parent[at]).tail) {
      path.push_back(parent[at]);
      if (tree_reach.contains(g_->arc(parent[at]).tail)) break;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      NodeId head = g_->arc(*it).head;
      std::vector<std::uint32_t> replaced;
      for (ArcId t : tree_)
        if (g_->arc(t).head == head && t != *it) replaced.push_back(t);
      for (ArcId t : replaced) tree_.erase(t);
      tree_.insert(*it);
    }
    note(3, "spanned cover node " + std::to_string(missing) + " via " +
                std::to_string(path.size()) + " arc(s)");
  }
}

bool SolverState::tree_is_valid_cover() const {
  return is_branching_cover(*g_, root_, tree_);
}

SolveResult SolverState::extract_result() {
  // Repair into a branching if some phase left a conflict: smallest-index
  // in-arc wins per head, arcs into the root go, then everything the root
  // no longer reaches through the tree goes too.
  {
    std::vector<char> taken(g_->node_count(), 0);
    std::vector<std::uint32_t> keep;
    for (ArcId id : tree_) {
      NodeId h = g_->arc(id).head;
      if (h == root_ || taken[h]) {
        note(0, "repair dropped arc " + std::to_string(id));
        continue;
      }
      taken[h] = 1;
      keep.push_back(id);
    }
    ArcSet kept(std::move(keep));
    NodeSet reach = reachable_from(*g_, kept, root_);
    std::vector<std::uint32_t> connected;
    for (ArcId id : kept) {
      if (reach.contains(g_->arc(id).tail))
        connected.push_back(id);
      else
        note(0, "repair dropped unreachable arc " + std::to_string(id));
    }
    tree_ = ArcSet(std::move(connected));
  }

  if (!tree_is_valid_cover())
    throw std::logic_error("solver produced a tree that is not a branching cover");

  // Improve to a fixpoint. Two moves, both strictly cost-decreasing, so the
  // certified bounds survive them: drop a leaf arc whose removal keeps the
  // cover (most expensive first, larger arc id first among equals), and
  // reroute a head onto a strictly cheaper saturated in-arc when the result
  // is still a branching cover.
  const auto expensive_first = [&](ArcId a, ArcId b) {
    if (g_->arc(a).cost != g_->arc(b).cost) return g_->arc(b).cost < g_->arc(a).cost;
    return b < a;
  };
  for (bool changed = true; changed;) {
    changed = false;
    bool removed = true;
    while (removed) {
      removed = false;
      std::vector<ArcId> order(tree_.begin(), tree_.end());
      std::sort(order.begin(), order.end(), expensive_first);
      for (ArcId id : order) {
        NodeId h = g_->arc(id).head;
        bool leaf = true;
        for (ArcId t : tree_) {
          if (t != id && g_->arc(t).tail == h) {
            leaf = false;
            break;
          }
        }
        if (!leaf) continue;
        ArcSet without = tree_;
        without.erase(id);
        NodeSet touched{root_};
        for (ArcId t : without) {
          touched.insert(g_->arc(t).tail);
          touched.insert(g_->arc(t).head);
        }
        if (is_vertex_cover(*g_, touched)) {
          tree_ = std::move(without);
          note(0, "pruned leaf arc " + std::to_string(id));
          removed = true;
          changed = true;
          break;
        }
      }
    }
    std::vector<ArcId> order(tree_.begin(), tree_.end());
    std::sort(order.begin(), order.end(), expensive_first);
    for (ArcId id : order) {
      if (changed) break;
      if (g_->arc(id).cost.is_zero()) break;
      const NodeId h = g_->arc(id).head;
      std::vector<ArcId> alts;
      for (ArcId alt : g_->in_arcs(h)) {
        if (alt == id || !active_.contains(alt)) continue;
        if (g_->arc(alt).cost < g_->arc(id).cost) alts.push_back(alt);
      }
      std::sort(alts.begin(), alts.end(), [&](ArcId a, ArcId b) {
        if (g_->arc(a).cost != g_->arc(b).cost) return g_->arc(a).cost < g_->arc(b).cost;
        return a < b;
      });
      for (ArcId alt : alts) {
        ArcSet candidate = tree_;
        candidate.erase(id);
        candidate.insert(alt);
        if (is_branching_cover(*g_, root_, candidate)) {
          tree_ = std::move(candidate);
          note(0, "rerouted node " + std::to_string(h) + " from arc " + std::to_string(id) +
                      " to arc " + std::to_string(alt));
          changed = true;
          break;
        }
      }
    }
    // Third move: discard a positive-cost arc together with its whole
    // subtree, then regrow free saturated arcs breadth-first from what
    // remains. Accepted only when the regrown tree still covers, so the
    // cost strictly drops by at least the discarded arc.
    if (!changed) {
      std::vector<ArcId> order2(tree_.begin(), tree_.end());
      std::sort(order2.begin(), order2.end(), expensive_first);
      for (ArcId id : order2) {
        if (g_->arc(id).cost.is_zero()) break;
        ArcSet candidate = tree_;
        candidate.erase(id);
        NodeSet doomed{g_->arc(id).head};
        std::vector<NodeId> stack{g_->arc(id).head};
        while (!stack.empty()) {
          NodeId x = stack.back();
          stack.pop_back();
          for (ArcId t : tree_) {
            if (g_->arc(t).tail != x || !candidate.contains(t)) continue;
            candidate.erase(t);
            NodeId w = g_->arc(t).head;
            if (!doomed.contains(w)) {
              doomed.insert(w);
              stack.push_back(w);
            }
          }
        }
        NodeSet reach{root_};
        for (ArcId t : candidate) reach.insert(g_->arc(t).head);
        for (bool grown = true; grown;) {
          grown = false;
          for (ArcId t : active_) {
            const Arc& a = g_->arc(t);
            if (!a.cost.is_zero() || candidate.contains(t)) continue;
            if (a.head == root_ || reach.contains(a.head) || !reach.contains(a.tail)) continue;
            candidate.insert(t);
            reach.insert(a.head);
            grown = true;
          }
        }
        if (is_branching_cover(*g_, root_, candidate)) {
          tree_ = std::move(candidate);
          note(0, "discarded arc " + std::to_string(id) + " with its subtree");
          changed = true;
          break;
        }
      }
    }
  }

  SolveResult res;
  res.root = root_;
  res.tree = tree_;
  for (ArcId id : tree_) res.tree_cost += g_->arc(id).cost;
  Cost objective;
  for (const DualEntry& e : ledger_.entries) objective += e.value;
  ledger_.objective = objective;
  Cost c1;
  for (const DualEntry& e : ledger_.entries) {
    if (e.family != DualFamily::kCut) continue;
    std::vector<char> in_set(g_->node_count(), 0);
    for (NodeId v : e.set) in_set[v] = 1;
    for (ArcId id : tree_) {
      const Arc& a = g_->arc(id);
      if (in_set[a.head] && !in_set[a.tail]) c1 += e.value;
    }
  }
  ledger_.c1_total = c1;
  res.ledger = ledger_;
  res.dual_lower_bound = objective;
  res.h_g = h_g_;
  res.ratio_bound = max(Cost::from_int(2), h_g_);
  res.trace = trace_;
  return res;
}

RootOutcome solve_root(const Digraph& g, NodeId root) {
  SolverState state(g, root);
  try {
    state.cover_pending_cuts();
    state.build_reachable_tree();
    state.commit_classification();
    if (!state.tree_is_valid_cover()) {
      state.greedy_cover_criticals();
      state.reconcile_reduced_costs();
      if (!state.tree_is_valid_cover()) state.connect_remaining();
    }
    return {state.extract_result(), ""};
  } catch (const InfeasibleRootError& e) {
    return {std::nullopt, e.what()};
  }
}

std::optional<SolveResult> solve(const Digraph& g) {
  const std::uint32_t n = g.node_count();
  std::vector<RootOutcome> outcomes(n);
  unsigned workers = thread_budget();
  if (workers > n) workers = n;
  if (workers <= 1) {
    for (NodeId r = 0; r < n; ++r) outcomes[r] = solve_root(g, r);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        while (true) {
          std::uint32_t r = next.fetch_add(1);
          if (r >= n) return;
          outcomes[r] = solve_root(g, r);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  std::optional<SolveResult> best;
  for (NodeId r = 0; r < n; ++r) {
    if (!outcomes[r].result) continue;
    if (!best || outcomes[r].result->tree_cost < best->tree_cost) best = std::move(outcomes[r].result);
  }
  return best;
}

}  // namespace dtc
