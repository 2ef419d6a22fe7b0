#include "dtc/verify.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

namespace dtc {

namespace {

void append_all(std::vector<std::string>& into, const std::vector<std::string>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

std::string arc_text(const Digraph& g, ArcId id) {
  const Arc& a = g.arc(id);
  return "arc " + std::to_string(id) + " (" + std::to_string(a.tail) + " -> " +
         std::to_string(a.head) + ")";
}

}  // namespace

VerificationReport verify_tree_cover(const Digraph& g, NodeId root, const ArcSet& tree) {
  VerificationReport rep;
  if (root >= g.node_count()) {
    rep.violations.push_back("root " + std::to_string(root) + " out of range");
    return rep;
  }
  for (ArcId id : tree)
    if (id >= g.arc_count()) {
      rep.violations.push_back("tree arc id " + std::to_string(id) + " out of range");
      return rep;
    }

  bool structural = true;
  std::vector<char> has_in(g.node_count(), 0);
  for (ArcId id : tree) {
    const Arc& a = g.arc(id);
    rep.cost_recomputed += a.cost;
    if (a.head == root) {
      rep.violations.push_back("tree " + arc_text(g, id) + " enters the root");
      structural = false;
    } else if (has_in[a.head]) {
      rep.violations.push_back("node " + std::to_string(a.head) +
                               " has more than one incoming tree arc");
      structural = false;
    }
    has_in[a.head] = 1;
  }
  NodeSet reach = reachable_from(g, tree, root);
  for (ArcId id : tree)
    if (!reach.contains(g.arc(id).tail)) {
      rep.violations.push_back("tree " + arc_text(g, id) +
                               " is not reachable from the root through the tree");
      structural = false;
    }
  rep.is_branching = structural;

  NodeSet touched;
  touched.insert(root);
  for (ArcId id : tree) {
    touched.insert(g.arc(id).tail);
    touched.insert(g.arc(id).head);
  }
  rep.is_cover = true;
  for (ArcId id = 0; id < g.arc_count(); ++id)
    if (!touched.contains(g.arc(id).tail) && !touched.contains(g.arc(id).head)) {
      rep.violations.push_back(arc_text(g, id) + " has no endpoint on the tree");
      rep.is_cover = false;
      break;
    }
  return rep;
}

DualCheck check_dual_feasibility(const Digraph& g, NodeId root,
                                 const std::vector<DualEntry>& entries) {
  DualCheck chk;
  bool valid = true;
  std::vector<Cost> load(g.arc_count());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const DualEntry& e = entries[i];
    chk.objective += e.value;
    const std::string tag = "dual entry " + std::to_string(i);
    if (e.value.is_infinite()) {
      chk.violations.push_back(tag + " has an infinite value");
      valid = false;
    } else if (!e.value.is_positive()) {
      chk.violations.push_back(tag + " has a non-positive value");
      valid = false;
    }
    if (e.set.empty()) {
      chk.violations.push_back(tag + " has an empty node set");
      valid = false;
      continue;
    }
    bool in_range = true;
    for (NodeId v : e.set)
      if (v >= g.node_count()) {
        chk.violations.push_back(tag + " mentions node " + std::to_string(v) +
                                 ", which is out of range");
        valid = false;
        in_range = false;
        break;
      }
    if (!in_range) continue;
    if (e.set.contains(root)) {
      chk.violations.push_back(tag + " contains the root");
      valid = false;
    }
    if (induced_arcs(g, e.set).empty()) {
      chk.violations.push_back(tag + " induces no arc, so it is outside the priced family");
      valid = false;
    }
    for (ArcId id : in_cut(g, e.set)) load[id] += e.value;
  }
  for (ArcId id = 0; id < g.arc_count(); ++id)
    if (g.arc(id).cost < load[id]) {
      chk.violations.push_back(arc_text(g, id) + " is charged " + load[id].str() +
                               ", above its cost " + g.arc(id).cost.str());
      valid = false;
    }
  chk.feasible = valid;
  return chk;
}

VerificationReport verify_certificate(const Digraph& g, const Certificate& cert) {
  VerificationReport rep;
  if (cert.root >= g.node_count()) {
    rep.violations.push_back("root " + std::to_string(cert.root) + " out of range");
    return rep;
  }

  // Resolve endpoint pairs to arc ids. For parallel arcs the k-th mention of
  // a pair takes the k-th cheapest matching arc (ties by arc id), which is
  // the most favourable reading for the certificate holder.
  std::map<std::pair<NodeId, NodeId>, std::vector<ArcId>> by_pair;
  for (ArcId id = 0; id < g.arc_count(); ++id)
    by_pair[{g.arc(id).tail, g.arc(id).head}].push_back(id);
  for (auto& [pair, ids] : by_pair)
    std::sort(ids.begin(), ids.end(), [&](ArcId a, ArcId b) {
      if (g.arc(a).cost != g.arc(b).cost) return g.arc(a).cost < g.arc(b).cost;
      return a < b;
    });

  bool resolved_all = true;
  std::map<std::pair<NodeId, NodeId>, std::size_t> used;
  ArcSet tree;
  for (const auto& [tail, head] : cert.tree_arcs) {
    auto it = by_pair.find({tail, head});
    std::size_t& next = used[{tail, head}];
    if (it == by_pair.end() || next >= it->second.size()) {
      rep.violations.push_back("certificate names arc " + std::to_string(tail) + " -> " +
                               std::to_string(head) +
                               " more often than the graph provides");
      resolved_all = false;
      continue;
    }
    tree.insert(it->second[next]);
    ++next;
  }

  VerificationReport structural = verify_tree_cover(g, cert.root, tree);
  rep.is_branching = structural.is_branching && resolved_all;
  rep.is_cover = structural.is_cover;
  rep.cost_recomputed = structural.cost_recomputed;
  append_all(rep.violations, structural.violations);

  DualCheck dual = check_dual_feasibility(g, cert.root, cert.duals);
  rep.dual_feasible = dual.feasible;
  rep.dual_objective = dual.objective;
  append_all(rep.violations, dual.violations);

  if (Cost() < rep.dual_objective && !rep.dual_objective.is_infinite())
    rep.ratio_vs_dual = rep.cost_recomputed / rep.dual_objective;
  return rep;
}

namespace {

/// Ascending arc-id sequence comparison of two arc subsets given as bitmasks.
bool mask_sequence_less(std::uint64_t a, std::uint64_t b) {
  std::vector<unsigned> va, vb;
  for (std::uint64_t rest = a; rest; rest &= rest - 1) va.push_back(std::countr_zero(rest));
  for (std::uint64_t rest = b; rest; rest &= rest - 1) vb.push_back(std::countr_zero(rest));
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

ArcSet mask_to_set(std::uint64_t mask) {
  ArcSet s;
  for (std::uint64_t rest = mask; rest; rest &= rest - 1)
    s.insert(static_cast<ArcId>(std::countr_zero(rest)));
  return s;
}

/// Enumeration core for graphs with at most 64 nodes: all node sets are
/// machine words. Costs run through int64 when every cost scales into a
/// common denominator without overflow, exact rationals otherwise.
OracleResult enumerate_small(const Digraph& g, NodeId root) {
  const std::uint32_t m = g.arc_count();
  std::vector<std::uint64_t> tail_bit(m), head_bit(m), touch(m);
  std::vector<NodeId> head(m);
  for (ArcId i = 0; i < m; ++i) {
    tail_bit[i] = std::uint64_t{1} << g.arc(i).tail;
    head_bit[i] = std::uint64_t{1} << g.arc(i).head;
    touch[i] = tail_bit[i] | head_bit[i];
    head[i] = g.arc(i).head;
  }

  bool int_costs = true;
  std::vector<std::int64_t> weight(m, 0);
  {
    mpz_class lcm = 1;
    for (ArcId i = 0; i < m; ++i) {
      mpz_class den = g.arc(i).cost.value().get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    mpz_class total = 0;
    std::vector<mpz_class> scaled(m);
    for (ArcId i = 0; i < m; ++i) {
      scaled[i] = g.arc(i).cost.value().get_num() * (lcm / g.arc(i).cost.value().get_den());
      total += scaled[i];
    }
    mpz_class ceiling;
    mpz_ui_pow_ui(ceiling.get_mpz_t(), 2, 62);
    if (total < ceiling)
      for (ArcId i = 0; i < m; ++i) weight[i] = scaled[i].get_si();
    else
      int_costs = false;
  }

  const std::uint64_t root_bit = std::uint64_t{1} << root;
  bool found = false;
  std::uint64_t best_mask = 0;
  std::int64_t best_int = 0;
  Cost best_exact;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    bool ok = true;
    std::uint64_t heads_seen = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      const unsigned i = std::countr_zero(rest);
      if (head[i] == root || (heads_seen & head_bit[i])) {
        ok = false;
        break;
      }
      heads_seen |= head_bit[i];
    }
    if (!ok) continue;

    std::uint64_t nodes = root_bit;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
        const unsigned i = std::countr_zero(rest);
        if ((nodes & tail_bit[i]) && !(nodes & head_bit[i])) {
          nodes |= head_bit[i];
          changed = true;
        }
      }
    }
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      if (!(nodes & tail_bit[std::countr_zero(rest)])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    std::uint64_t touched = root_bit;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) touched |= touch[std::countr_zero(rest)];
    for (ArcId j = 0; j < m; ++j)
      if (!(touch[j] & touched)) {
        ok = false;
        break;
      }
    if (!ok) continue;

    if (int_costs) {
      std::int64_t sum = 0;
      for (std::uint64_t rest = mask; rest; rest &= rest - 1) sum += weight[std::countr_zero(rest)];
      if (!found || sum < best_int ||
          (sum == best_int && mask_sequence_less(mask, best_mask))) {
        found = true;
        best_int = sum;
        best_mask = mask;
      }
    } else {
      Cost sum;
      for (std::uint64_t rest = mask; rest; rest &= rest - 1)
        sum += g.arc(std::countr_zero(rest)).cost;
      if (!found || sum < best_exact ||
          (sum == best_exact && mask_sequence_less(mask, best_mask))) {
        found = true;
        best_exact = sum;
        best_mask = mask;
      }
    }
  }

  OracleResult res;
  res.cost = Cost::infinite();
  if (!found) return res;
  res.feasible = true;
  res.witness = mask_to_set(best_mask);
  res.cost = Cost();
  for (ArcId id : res.witness) res.cost += g.arc(id).cost;
  return res;
}

/// Fallback for graphs with more than 64 nodes; same enumeration with plain
/// buffers instead of word-sized node sets.
OracleResult enumerate_generic(const Digraph& g, NodeId root) {
  const std::uint32_t m = g.arc_count();
  const std::uint32_t n = g.node_count();
  std::vector<ArcId> picked;
  picked.reserve(m);
  std::vector<char> reach_buf(n), touched_buf(n);

  bool found = false;
  std::uint64_t best_mask = 0;
  Cost best_cost;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    picked.clear();
    for (std::uint64_t rest = mask; rest; rest &= rest - 1)
      picked.push_back(static_cast<ArcId>(std::countr_zero(rest)));

    bool ok = true;
    for (std::size_t a = 0; a < picked.size() && ok; ++a) {
      if (g.arc(picked[a]).head == root) ok = false;
      for (std::size_t b = a + 1; b < picked.size() && ok; ++b)
        if (g.arc(picked[a]).head == g.arc(picked[b]).head) ok = false;
    }
    if (!ok) continue;

    std::fill(reach_buf.begin(), reach_buf.end(), 0);
    reach_buf[root] = 1;
    for (bool changed = true; changed;) {
      changed = false;
      for (ArcId id : picked)
        if (reach_buf[g.arc(id).tail] && !reach_buf[g.arc(id).head]) {
          reach_buf[g.arc(id).head] = 1;
          changed = true;
        }
    }
    for (ArcId id : picked)
      if (!reach_buf[g.arc(id).tail]) {
        ok = false;
        break;
      }
    if (!ok) continue;

    std::fill(touched_buf.begin(), touched_buf.end(), 0);
    touched_buf[root] = 1;
    for (ArcId id : picked) {
      touched_buf[g.arc(id).tail] = 1;
      touched_buf[g.arc(id).head] = 1;
    }
    for (ArcId j = 0; j < m; ++j)
      if (!touched_buf[g.arc(j).tail] && !touched_buf[g.arc(j).head]) {
        ok = false;
        break;
      }
    if (!ok) continue;

    Cost sum;
    for (ArcId id : picked) sum += g.arc(id).cost;
    if (!found || sum < best_cost ||
        (sum == best_cost && mask_sequence_less(mask, best_mask))) {
      found = true;
      best_cost = sum;
      best_mask = mask;
    }
  }

  OracleResult res;
  res.cost = Cost::infinite();
  if (!found) return res;
  res.feasible = true;
  res.witness = mask_to_set(best_mask);
  res.cost = best_cost;
  return res;
}

}  // namespace

OracleResult exact_min_cover(const Digraph& g, NodeId root, std::uint32_t max_arcs) {
  if (root >= g.node_count()) throw std::invalid_argument("root out of range");
  if (g.arc_count() > max_arcs || g.arc_count() > 26)
    throw std::invalid_argument("exhaustive search refuses " + std::to_string(g.arc_count()) +
                                " arcs (limit " + std::to_string(std::min<std::uint32_t>(max_arcs, 26)) +
                                ")");
  if (g.node_count() <= 64) return enumerate_small(g, root);
  return enumerate_generic(g, root);
}

VerificationReport ratio_check(const Digraph& g, const SolveResult& result,
                               const std::optional<Cost>& exact_opt) {
  VerificationReport rep = verify_tree_cover(g, result.root, result.tree);
  if (rep.cost_recomputed != result.tree_cost)
    rep.violations.push_back("reported tree cost " + result.tree_cost.str() +
                             " differs from the recomputed cost " + rep.cost_recomputed.str());

  DualCheck dual = check_dual_feasibility(g, result.root, result.ledger.entries);
  rep.dual_feasible = dual.feasible;
  rep.dual_objective = dual.objective;
  append_all(rep.violations, dual.violations);
  if (dual.objective != result.dual_lower_bound)
    rep.violations.push_back("reported lower bound " + result.dual_lower_bound.str() +
                             " differs from the ledger objective " + dual.objective.str());
  if (result.ratio_bound != max(Cost::from_int(2), result.h_g))
    rep.violations.push_back("ratio bound " + result.ratio_bound.str() +
                             " is not max(2, " + result.h_g.str() + ")");

  const Cost cut_total = result.ledger.family_total(DualFamily::kCut);
  const Cost greedy_total = result.ledger.family_total(DualFamily::kGreedy);
  const Cost split_bound = Cost::from_int(2) * cut_total + result.h_g * greedy_total;
  if (!(rep.cost_recomputed <= split_bound))
    rep.violations.push_back("cost " + rep.cost_recomputed.str() +
                             " exceeds 2*(cut total) + h*(greedy total) = " + split_bound.str());
  if (!(rep.cost_recomputed <= result.ratio_bound * dual.objective))
    rep.violations.push_back("cost " + rep.cost_recomputed.str() + " exceeds ratio bound " +
                             result.ratio_bound.str() + " times the dual objective " +
                             dual.objective.str());

  if (exact_opt) {
    if (!(dual.objective <= *exact_opt))
      rep.violations.push_back("dual objective " + dual.objective.str() +
                               " exceeds the exact optimum " + exact_opt->str());
    if (!(*exact_opt <= rep.cost_recomputed))
      rep.violations.push_back("exact optimum " + exact_opt->str() +
                               " exceeds the produced cost " + rep.cost_recomputed.str());
    if (!(rep.cost_recomputed <= result.ratio_bound * *exact_opt))
      rep.violations.push_back("cost " + rep.cost_recomputed.str() + " exceeds ratio bound " +
                               result.ratio_bound.str() + " times the optimum " +
                               exact_opt->str());
  }

  if (Cost() < dual.objective && !dual.objective.is_infinite())
    rep.ratio_vs_dual = rep.cost_recomputed / dual.objective;
  return rep;
}

}  // namespace dtc
