#include "dtc/digraph.hpp"

#include <deque>
#include <queue>
#include <stdexcept>

namespace dtc {

Digraph::Digraph(std::uint32_t node_count, std::vector<Arc> arcs)
    : node_count_(node_count), arcs_(std::move(arcs)) {
  if (node_count_ == 0) throw std::invalid_argument("digraph needs at least one node");
  out_.resize(node_count_);
  in_.resize(node_count_);
  for (ArcId id = 0; id < arcs_.size(); ++id) {
    const Arc& a = arcs_[id];
    if (a.tail >= node_count_ || a.head >= node_count_)
      throw std::invalid_argument("arc endpoint out of range");
    if (a.tail == a.head) throw std::invalid_argument("self-loops are not allowed");
    if (a.cost.is_infinite()) throw std::invalid_argument("arc cost must be finite");
    out_[a.tail].push_back(id);
    in_[a.head].push_back(id);
  }
}

namespace {

std::vector<char> node_mask(const Digraph& g, const NodeSet& s) {
  std::vector<char> m(g.node_count(), 0);
  for (NodeId v : s) {
    if (v >= g.node_count()) throw std::invalid_argument("node out of range");
    m[v] = 1;
  }
  return m;
}

std::vector<char> arc_mask(const Digraph& g, const ArcSet& active) {
  std::vector<char> m(g.arc_count(), 0);
  for (ArcId id : active) {
    if (id >= g.arc_count()) throw std::invalid_argument("arc out of range");
    m[id] = 1;
  }
  return m;
}

}  // namespace

ArcSet in_cut(const Digraph& g, const NodeSet& s) {
  auto m = node_mask(g, s);
  std::vector<std::uint32_t> out;
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    const Arc& a = g.arc(id);
    if (m[a.head] && !m[a.tail]) out.push_back(id);
  }
  return ArcSet(std::move(out));
}

ArcSet out_cut(const Digraph& g, const NodeSet& s) {
  auto m = node_mask(g, s);
  std::vector<std::uint32_t> out;
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    const Arc& a = g.arc(id);
    if (m[a.tail] && !m[a.head]) out.push_back(id);
  }
  return ArcSet(std::move(out));
}

ArcSet induced_arcs(const Digraph& g, const NodeSet& s) {
  auto m = node_mask(g, s);
  std::vector<std::uint32_t> out;
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    const Arc& a = g.arc(id);
    if (m[a.tail] && m[a.head]) out.push_back(id);
  }
  return ArcSet(std::move(out));
}

NodeSet reachable_from(const Digraph& g, const ArcSet& active, NodeId from) {
  if (from >= g.node_count()) throw std::invalid_argument("node out of range");
  auto am = arc_mask(g, active);
  std::vector<char> seen(g.node_count(), 0);
  std::deque<NodeId> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    for (ArcId id : g.out_arcs(v)) {
      if (!am[id]) continue;
      NodeId h = g.arc(id).head;
      if (!seen[h]) {
        seen[h] = 1;
        queue.push_back(h);
      }
    }
  }
  std::vector<std::uint32_t> out;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (seen[v]) out.push_back(v);
  return NodeSet(std::move(out));
}

bool is_vertex_cover(const Digraph& g, const NodeSet& w) {
  auto m = node_mask(g, w);
  for (const Arc& a : g.arcs())
    if (!m[a.tail] && !m[a.head]) return false;
  return true;
}

SccResult strongly_connected_components(const Digraph& g, const ArcSet& active) {
  auto am = arc_mask(g, active);
  const std::uint32_t n = g.node_count();
  // Iterative Tarjan; raw component order is then renumbered so ids ascend
  // with the smallest contained node, making results independent of
  // traversal details.
  std::vector<std::uint32_t> index(n, UINT32_MAX), low(n, 0), raw(n, UINT32_MAX);
  std::vector<char> on_stack(n, 0);
  std::vector<NodeId> stack;
  std::uint32_t next_index = 0, raw_count = 0;

  struct Frame {
    NodeId v;
    std::size_t arc_pos;
  };
  std::vector<Frame> call;
  for (NodeId start = 0; start < n; ++start) {
    if (index[start] != UINT32_MAX) continue;
    call.push_back({start, 0});
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& outs = g.out_arcs(f.v);
      bool descended = false;
      while (f.arc_pos < outs.size()) {
        ArcId id = outs[f.arc_pos++];
        if (!am[id]) continue;
        NodeId w = g.arc(id).head;
        if (index[w] == UINT32_MAX) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w] && index[w] < low[f.v]) low[f.v] = index[w];
      }
      if (descended) continue;
      NodeId v = f.v;
      call.pop_back();
      if (!call.empty() && low[v] < low[call.back().v]) low[call.back().v] = low[v];
      if (low[v] == index[v]) {
        while (true) {
          NodeId w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          raw[w] = raw_count;
          if (w == v) break;
        }
        ++raw_count;
      }
    }
  }

  // Renumber by smallest contained node index.
  std::vector<NodeId> smallest(raw_count, UINT32_MAX);
  for (NodeId v = 0; v < n; ++v)
    if (v < smallest[raw[v]]) smallest[raw[v]] = v;
  std::vector<std::uint32_t> order(raw_count);
  for (std::uint32_t i = 0; i < raw_count; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return smallest[a] < smallest[b]; });
  std::vector<std::uint32_t> renumber(raw_count);
  for (std::uint32_t pos = 0; pos < raw_count; ++pos) renumber[order[pos]] = pos;

  SccResult res;
  res.component_of.resize(n);
  std::vector<std::vector<std::uint32_t>> members(raw_count);
  for (NodeId v = 0; v < n; ++v) {
    res.component_of[v] = renumber[raw[v]];
    members[res.component_of[v]].push_back(v);
  }
  res.components.reserve(raw_count);
  for (auto& ms : members) res.components.push_back(NodeSet(std::move(ms)));
  res.successors.resize(raw_count);
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    if (!am[id]) continue;
    std::uint32_t ct = res.component_of[g.arc(id).tail];
    std::uint32_t ch = res.component_of[g.arc(id).head];
    if (ct != ch) res.successors[ct].push_back(ch);
  }
  for (auto& succ : res.successors) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  return res;
}

std::vector<std::uint32_t> SccResult::topological_order() const {
  std::vector<std::uint32_t> indeg(components.size(), 0);
  for (const auto& succ : successors)
    for (std::uint32_t c : succ) ++indeg[c];
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::uint32_t c = 0; c < components.size(); ++c)
    if (indeg[c] == 0) ready.push(c);
  std::vector<std::uint32_t> order;
  order.reserve(components.size());
  while (!ready.empty()) {
    std::uint32_t c = ready.top();
    ready.pop();
    order.push_back(c);
    for (std::uint32_t d : successors[c])
      if (--indeg[d] == 0) ready.push(d);
  }
  return order;
}

bool is_branching_cover(const Digraph& g, NodeId root, const ArcSet& arcs) {
  std::vector<char> has_in(g.node_count(), 0);
  for (ArcId id : arcs) {
    if (id >= g.arc_count()) return false;
    NodeId h = g.arc(id).head;
    if (h == root) return false;
    if (has_in[h]) return false;
    has_in[h] = 1;
  }
  NodeSet reach = reachable_from(g, arcs, root);
  NodeSet touched;
  touched.insert(root);
  for (ArcId id : arcs) {
    const Arc& a = g.arc(id);
    if (!reach.contains(a.tail)) return false;
    touched.insert(a.tail);
    touched.insert(a.head);
  }
  return is_vertex_cover(g, touched);
}

}  // namespace dtc
