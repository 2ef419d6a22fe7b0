#pragma once

#include <cstdint>
#include <vector>

#include "dtc/cost.hpp"
#include "dtc/index_set.hpp"

namespace dtc {

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
  Cost cost;

  bool operator==(const Arc& o) const {
    return tail == o.tail && head == o.head && cost == o.cost;
  }
};

/// Immutable arc-indexed multigraph. Parallel arcs are fine, self-loops are
/// not (they could never be covered by a branching and are rejected up
/// front). Arc ids are positions in the construction order.
class Digraph {
 public:
  Digraph(std::uint32_t node_count, std::vector<Arc> arcs);

  std::uint32_t node_count() const { return node_count_; }
  std::uint32_t arc_count() const { return static_cast<std::uint32_t>(arcs_.size()); }
  const Arc& arc(ArcId id) const { return arcs_[id]; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  /// Arc ids sorted ascending.
  const std::vector<ArcId>& out_arcs(NodeId v) const { return out_[v]; }
  const std::vector<ArcId>& in_arcs(NodeId v) const { return in_[v]; }

  bool operator==(const Digraph& o) const {
    return node_count_ == o.node_count_ && arcs_ == o.arcs_;
  }

 private:
  std::uint32_t node_count_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
};

/// Arcs with head inside `s` and tail outside.
ArcSet in_cut(const Digraph& g, const NodeSet& s);
/// Arcs with tail inside `s` and head outside.
ArcSet out_cut(const Digraph& g, const NodeSet& s);
/// Arcs with both endpoints inside `s`.
ArcSet induced_arcs(const Digraph& g, const NodeSet& s);

/// Nodes reachable from `from` using only arcs in `active` (includes `from`).
NodeSet reachable_from(const Digraph& g, const ArcSet& active, NodeId from);

/// True when every arc of g has an endpoint in `w`.
bool is_vertex_cover(const Digraph& g, const NodeSet& w);

struct SccResult {
  /// Vertex sets of the components, ids normalized so that component ids
  /// ascend with the smallest node index they contain.
  std::vector<NodeSet> components;
  /// Node id -> component id.
  std::vector<std::uint32_t> component_of;
  /// Condensation adjacency over component ids, sorted and deduplicated.
  std::vector<std::vector<std::uint32_t>> successors;

  /// Kahn order over the condensation, smallest ready component id first.
  std::vector<std::uint32_t> topological_order() const;
};

/// Strongly connected components of (V, active).
SccResult strongly_connected_components(const Digraph& g, const ArcSet& active);

/// True when `arcs` forms a branching rooted at `root` (per-node in-degree at
/// most one, no arc into the root, every arc tail reachable from the root
/// through the chosen arcs) whose touched node set plus the root covers every
/// arc of the graph.
bool is_branching_cover(const Digraph& g, NodeId root, const ArcSet& arcs);

}  // namespace dtc
