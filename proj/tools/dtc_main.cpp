#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dtc/generate.hpp"
#include "dtc/io.hpp"
#include "dtc/reduction.hpp"
#include "dtc/solver.hpp"
#include "dtc/verify.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_result(std::ostream& os, const dtc::SolveResult& res, const dtc::Digraph& g,
                  bool with_trace) {
  os << "root " << res.root << "\n";
  os << "cost " << res.tree_cost.str() << "\n";
  os << "dual " << res.dual_lower_bound.str() << "\n";
  os << "h " << res.h_g.str() << "\n";
  os << "ratio-bound " << res.ratio_bound.str() << "\n";
  os << "tree-arcs " << res.tree.size() << "\n";
  for (dtc::ArcId id : res.tree) {
    const dtc::Arc& a = g.arc(id);
    os << "tree-arc " << id << " " << a.tail << " " << a.head << " " << a.cost.str() << "\n";
  }
  os << "dual-entries " << res.ledger.entries.size() << "\n";
  for (const dtc::DualEntry& e : res.ledger.entries) {
    os << "dual-entry " << dtc::family_letter(e.family) << " " << e.value.str();
    for (dtc::NodeId v : e.set) os << " " << v;
    os << "\n";
  }
  if (with_trace)
    for (const dtc::TraceEvent& ev : res.trace) os << "trace " << ev.phase << " " << ev.text << "\n";
}

dtc::Certificate to_certificate(const dtc::SolveResult& res, const dtc::Digraph& g) {
  dtc::Certificate cert;
  cert.root = res.root;
  for (dtc::ArcId id : res.tree) cert.tree_arcs.push_back({g.arc(id).tail, g.arc(id).head});
  cert.duals = res.ledger.entries;
  return cert;
}

int run_solve(const std::string& input, std::optional<std::uint32_t> root_flag,
              const std::string& cert_path, bool with_trace) {
  dtc::ParsedInstance inst = dtc::parse_instance(slurp(input));
  std::optional<dtc::NodeId> root = root_flag ? root_flag : inst.root;
  if (root && *root >= inst.graph.node_count()) {
    std::cerr << "error: root " << *root << " out of range\n";
    return 1;
  }

  std::optional<dtc::SolveResult> res;
  std::string reason;
  if (root) {
    dtc::RootOutcome out = dtc::solve_root(inst.graph, *root);
    res = std::move(out.result);
    reason = out.infeasible_reason;
  } else {
    res = dtc::solve(inst.graph);
    reason = "no root admits a tree cover";
  }
  if (!res) {
    std::cout << "infeasible " << reason << "\n";
    return 2;
  }
  print_result(std::cout, *res, inst.graph, with_trace);
  if (!cert_path.empty())
    spill(cert_path, dtc::emit_certificate(to_certificate(*res, inst.graph)));
  return 0;
}

int run_exact(const std::string& input, std::optional<std::uint32_t> root_flag,
              std::uint32_t max_arcs) {
  dtc::ParsedInstance inst = dtc::parse_instance(slurp(input));
  std::optional<dtc::NodeId> root = root_flag ? root_flag : inst.root;
  if (root && *root >= inst.graph.node_count()) {
    std::cerr << "error: root " << *root << " out of range\n";
    return 1;
  }

  std::optional<dtc::NodeId> best_root;
  dtc::OracleResult best;
  if (root) {
    best = dtc::exact_min_cover(inst.graph, *root, max_arcs);
    best_root = *root;
  } else {
    for (dtc::NodeId r = 0; r < inst.graph.node_count(); ++r) {
      dtc::OracleResult cur = dtc::exact_min_cover(inst.graph, r, max_arcs);
      if (!cur.feasible) continue;
      if (!best.feasible || cur.cost < best.cost) {
        best = std::move(cur);
        best_root = r;
      }
    }
  }
  if (!best.feasible) {
    std::cout << "infeasible\n";
    return 2;
  }
  std::cout << "root " << *best_root << "\n";
  std::cout << "cost " << best.cost.str() << "\n";
  std::cout << "witness";
  for (dtc::ArcId id : best.witness) std::cout << " " << id;
  std::cout << "\n";
  return 0;
}

int run_verify(const std::string& input, const std::string& cert_path) {
  dtc::ParsedInstance inst = dtc::parse_instance(slurp(input));
  dtc::Certificate cert = dtc::parse_certificate(slurp(cert_path));
  dtc::VerificationReport rep = dtc::verify_certificate(inst.graph, cert);
  std::cout << "branching " << yes_no(rep.is_branching) << "\n";
  std::cout << "cover " << yes_no(rep.is_cover) << "\n";
  std::cout << "cost " << rep.cost_recomputed.str() << "\n";
  std::cout << "dual-feasible " << yes_no(rep.dual_feasible) << "\n";
  std::cout << "dual " << rep.dual_objective.str() << "\n";
  if (rep.ratio_vs_dual) std::cout << "ratio " << rep.ratio_vs_dual->str() << "\n";
  for (const std::string& v : rep.violations) std::cout << "violation " << v << "\n";
  std::cout << "verdict " << (rep.ok() ? "ok" : "reject") << "\n";
  return rep.ok() ? 0 : 2;
}

int run_reduce(const std::string& input, const std::string& output) {
  dtc::SCPInstance scp = dtc::parse_scp(slurp(input));
  dtc::ReducedInstance red = dtc::reduce(scp);
  spill(output, dtc::emit_instance(red.graph, red.map.root));

  std::ostringstream map;
  map << "root " << red.map.root << "\n";
  for (std::size_t i = 0; i < red.map.subset_node.size(); ++i)
    map << "subset " << i << " node " << red.map.subset_node[i] << " arc "
        << red.map.subset_arc[i] << "\n";
  for (std::size_t k = 0; k < red.map.element_node.size(); ++k)
    map << "element " << k << " node " << red.map.element_node[k] << " prime "
        << red.map.prime_node[k] << "\n";
  spill(output + ".map", map.str());

  std::cout << "nodes " << red.graph.node_count() << "\n";
  std::cout << "arcs " << red.graph.arc_count() << "\n";
  std::cout << "map " << output << ".map\n";
  return 0;
}

int run_gen(std::uint32_t nodes, std::uint32_t arcs, unsigned long max_cost,
            const std::string& zero_frac, std::uint64_t seed, const std::string& output) {
  dtc::GenParams params;
  params.nodes = nodes;
  params.arcs = arcs;
  params.max_cost = max_cost;
  params.zero_frac = dtc::Cost::parse(zero_frac);
  params.seed = seed;
  dtc::Digraph g = dtc::generate_instance(params);
  std::string text = dtc::emit_instance(g, std::nullopt);
  if (output.empty())
    std::cout << text;
  else
    spill(output, text);
  return 0;
}

int run_bench(const std::string& dir, const std::string& report, std::uint32_t max_arcs) {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".dtc")
      names.push_back(entry.path().filename().string());
  std::sort(names.begin(), names.end());

  std::ostringstream out;
  for (const std::string& name : names) {
    dtc::ParsedInstance inst = dtc::parse_instance(slurp(dir + "/" + name));
    out << name;

    std::optional<dtc::SolveResult> res;
    if (inst.root) {
      dtc::RootOutcome o = dtc::solve_root(inst.graph, *inst.root);
      res = std::move(o.result);
    } else {
      res = dtc::solve(inst.graph);
    }
    if (!res) {
      out << " infeasible\n";
      continue;
    }
    out << " cost " << res->tree_cost.str() << " dual " << res->dual_lower_bound.str()
        << " ratio-bound " << res->ratio_bound.str();

    if (inst.graph.arc_count() <= max_arcs) {
      dtc::OracleResult best;
      if (inst.root) {
        best = dtc::exact_min_cover(inst.graph, *inst.root, max_arcs);
      } else {
        for (dtc::NodeId r = 0; r < inst.graph.node_count(); ++r) {
          dtc::OracleResult cur = dtc::exact_min_cover(inst.graph, r, max_arcs);
          if (cur.feasible && (!best.feasible || cur.cost < best.cost)) best = std::move(cur);
        }
      }
      if (best.feasible) {
        out << " opt " << best.cost.str();
        if (best.cost.is_positive())
          out << " ratio " << (res->tree_cost / best.cost).str();
      }
    }
    out << "\n";
  }
  out << "instances " << names.size() << "\n";

  std::cout << out.str();
  if (!report.empty()) spill(report, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primal-dual solver for minimum directed tree cover"};
  app.require_subcommand(1);

  std::string input, output, cert_path;
  std::optional<std::uint32_t> root_flag;
  bool with_trace = false;
  std::uint32_t max_arcs = 18;

  CLI::App* solve = app.add_subcommand("solve", "Approximate a minimum tree cover");
  solve->add_option("-i,--input", input, "Instance file")->required();
  solve->add_option("-r,--root", root_flag, "Root to solve for (default: instance root, else best over all roots)");
  solve->add_option("-o,--certificate", cert_path, "Write a certificate file");
  solve->add_flag("--trace", with_trace, "Print solver trace events");

  CLI::App* exact = app.add_subcommand("exact", "Exhaustive minimum tree cover");
  exact->add_option("-i,--input", input, "Instance file")->required();
  exact->add_option("-r,--root", root_flag, "Root (default: instance root, else best over all roots)");
  exact->add_option("--max-arcs", max_arcs, "Refuse instances with more arcs than this");

  CLI::App* verify = app.add_subcommand("verify", "Check a certificate against an instance");
  verify->add_option("-i,--input", input, "Instance file")->required();
  verify->add_option("-c,--certificate", cert_path, "Certificate file")->required();

  CLI::App* reduce = app.add_subcommand("reduce-scp", "Reduce weighted set cover to tree cover");
  reduce->add_option("-i,--input", input, "Set-cover file")->required();
  reduce->add_option("-o,--output", output, "Instance file to write")->required();

  std::uint32_t gen_nodes = 0, gen_arcs = 0;
  unsigned long gen_max_cost = 10;
  std::string gen_zero_frac = "0";
  std::uint64_t gen_seed = 1;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--nodes", gen_nodes, "Node count (at least 2)")->required();
  gen->add_option("--arcs", gen_arcs, "Arc count (at least 1)")->required();
  gen->add_option("--max-cost", gen_max_cost, "Largest integer cost");
  gen->add_option("--zero-frac", gen_zero_frac, "Probability of forcing an arc cost to zero");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("-o,--output", output, "Instance file to write (default: stdout)");

  std::string bench_report;
  CLI::App* bench = app.add_subcommand("bench", "Solve every .dtc instance in a directory");
  bench->add_option("--dir", input, "Instance directory")->required();
  bench->add_option("--report", bench_report, "Also write the report to this file");
  bench->add_option("--max-arcs", max_arcs, "Compare against the exhaustive optimum up to this many arcs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(solve)) return run_solve(input, root_flag, cert_path, with_trace);
    if (app.got_subcommand(exact)) return run_exact(input, root_flag, max_arcs);
    if (app.got_subcommand(verify)) return run_verify(input, cert_path);
    if (app.got_subcommand(reduce)) return run_reduce(input, output);
    if (app.got_subcommand(gen))
      return run_gen(gen_nodes, gen_arcs, gen_max_cost, gen_zero_frac, gen_seed, output);
    if (app.got_subcommand(bench)) return run_bench(input, bench_report, max_arcs);
  } catch (const dtc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
