#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dtc/digraph.hpp"
#include "dtc/dual.hpp"
#include "dtc/reduction.hpp"

namespace dtc {

/// Carries the 1-based line number of the offending input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParsedInstance {
  Digraph graph;
  std::optional<NodeId> root;

  bool operator==(const ParsedInstance& o) const {
    return graph == o.graph && root == o.root;
  }
};

/// Instance text format: `nodes <n>`, then `arc <tail> <head> <cost>` lines
/// and at most one `root <r>`. `#` starts a comment, blank lines are fine.
ParsedInstance parse_instance(const std::string& text);
std::string emit_instance(const Digraph& g, std::optional<NodeId> root);

/// Set-cover text format: `elements <p>`, then `set <weight> <e>...` lines.
SCPInstance parse_scp(const std::string& text);
std::string emit_scp(const SCPInstance& scp);

/// A solution certificate as written/read by the CLI: the chosen root, the
/// tree as endpoint pairs, and the dual ledger. Tree arcs are endpoint pairs
/// rather than arc ids so certificates stay meaningful without the original
/// arc numbering; the verifier resolves each pair against the instance.
struct Certificate {
  NodeId root = 0;
  std::vector<std::pair<NodeId, NodeId>> tree_arcs;
  std::vector<DualEntry> duals;

  bool operator==(const Certificate& o) const {
    return root == o.root && tree_arcs == o.tree_arcs && duals == o.duals;
  }
};

/// Certificate text format: one `root <r>` line, `tree_arc <tail> <head>`
/// lines, and `family <B|T>` immediately followed by `dual <value> <node>...`.
Certificate parse_certificate(const std::string& text);
std::string emit_certificate(const Certificate& cert);

}  // namespace dtc
