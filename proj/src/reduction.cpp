#include "dtc/reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace dtc {

ReducedInstance reduce(const SCPInstance& scp) {
  const std::uint32_t q = static_cast<std::uint32_t>(scp.subsets.size());
  const std::uint32_t p = scp.element_count;
  if (p == 0) throw std::invalid_argument("set-cover instance has no elements");

  ReductionMap map;
  map.root = 0;
  for (std::uint32_t i = 0; i < q; ++i) map.subset_node.push_back(1 + i);
  for (std::uint32_t k = 0; k < p; ++k) {
    map.element_node.push_back(1 + q + k);
    map.prime_node.push_back(1 + q + p + k);
  }

  std::vector<Arc> arcs;
  // Buying subset i is the weighted arc root -> subset node.
  for (std::uint32_t i = 0; i < q; ++i) {
    map.subset_arc.push_back(static_cast<ArcId>(arcs.size()));
    arcs.push_back({map.root, map.subset_node[i], scp.subsets[i].weight});
  }
  // Subsets reach their elements for free.
  for (std::uint32_t i = 0; i < q; ++i)
    for (NodeId k : scp.subsets[i].members) arcs.push_back({map.subset_node[i], map.element_node[k], Cost()});
  // Each element drags a primed twin; the twin's only in-arc forces the
  // element into every vertex cover.
  for (std::uint32_t k = 0; k < p; ++k) arcs.push_back({map.element_node[k], map.prime_node[k], Cost()});

  return ReducedInstance{Digraph(1 + q + 2 * p, std::move(arcs)), std::move(map)};
}

std::vector<std::uint32_t> lift_cover(const ReducedInstance& red, const ArcSet& tree) {
  std::vector<char> touched(red.graph.node_count(), 0);
  for (ArcId id : tree) {
    if (id >= red.graph.arc_count()) throw std::invalid_argument("tree arc out of range");
    touched[red.graph.arc(id).tail] = 1;
    touched[red.graph.arc(id).head] = 1;
  }
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t i = 0; i < red.map.subset_node.size(); ++i)
    if (touched[red.map.subset_node[i]]) chosen.push_back(i);
  return chosen;
}

ScpResult exact_scp(const SCPInstance& scp) {
  const std::uint32_t q = static_cast<std::uint32_t>(scp.subsets.size());
  const std::uint32_t p = scp.element_count;
  if (q > 20) throw std::invalid_argument("exhaustive set-cover search refuses more than 20 subsets");
  if (p == 0) throw std::invalid_argument("set-cover instance has no elements");

  std::vector<std::vector<char>> member_mask(q, std::vector<char>(p, 0));
  for (std::uint32_t i = 0; i < q; ++i)
    for (NodeId k : scp.subsets[i].members) member_mask[i][k] = 1;

  ScpResult best;
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t sel = 0; sel < (1u << q); ++sel) {
    std::vector<char> covered(p, 0);
    Cost weight;
    chosen.clear();
    for (std::uint32_t i = 0; i < q; ++i) {
      if (!(sel >> i & 1)) continue;
      chosen.push_back(i);
      weight += scp.subsets[i].weight;
      for (std::uint32_t k = 0; k < p; ++k)
        if (member_mask[i][k]) covered[k] = 1;
    }
    bool full = true;
    for (std::uint32_t k = 0; k < p; ++k)
      if (!covered[k]) {
        full = false;
        break;
      }
    if (!full) continue;
    if (!best.feasible || weight < best.weight ||
        (weight == best.weight &&
         std::lexicographical_compare(chosen.begin(), chosen.end(), best.chosen.begin(),
                                      best.chosen.end()))) {
      best.feasible = true;
      best.weight = weight;
      best.chosen = chosen;
    }
  }
  return best;
}

}  // namespace dtc
